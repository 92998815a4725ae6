#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "airimpact/common.hpp"

namespace airimpact {

// Writes to <path>.tmp and renames on commit, so a failed run never leaves
// a truncated file at the destination.
class AtomicFile {
public:
    explicit AtomicFile(std::filesystem::path path)
        : path_(std::move(path)), tmp_(path_.string() + ".tmp") {
        std::filesystem::create_directories(path_.parent_path().empty()
                                                ? std::filesystem::path(".")
                                                : path_.parent_path());
        out_.open(tmp_, std::ios::binary | std::ios::trunc);
        if (!out_) throw Error("cannot open " + tmp_.string() + " for writing");
    }

    ~AtomicFile() {
        if (!committed_) {
            out_.close();
            std::error_code ec;
            std::filesystem::remove(tmp_, ec);
        }
    }

    std::ostream& stream() { return out_; }

    void write(std::string_view s) { out_.write(s.data(), static_cast<std::streamsize>(s.size())); }

    void commit() {
        out_.flush();
        if (!out_) throw Error("write failed for " + tmp_.string());
        out_.close();
        std::filesystem::rename(tmp_, path_);
        committed_ = true;
    }

private:
    std::filesystem::path path_;
    std::filesystem::path tmp_;
    std::ofstream out_;
    bool committed_ = false;
};

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace airimpact
