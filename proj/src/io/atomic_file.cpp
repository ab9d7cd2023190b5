#include "mmsim/io/atomic_file.hpp"

#include "mmsim/error.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace mmsim::io {

void write_file_atomic(const std::string& path, std::string_view content) {
    const std::filesystem::path target(path);
    if (target.has_parent_path() && !std::filesystem::exists(target.parent_path()))
        std::filesystem::create_directories(target.parent_path());
    const std::string tmp = fmt::format("{}.tmp.{}", path, ::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(fmt::format("cannot open '{}' for writing: {}", tmp, std::strerror(errno)));
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            throw Error(fmt::format("failed writing '{}'", tmp));
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        const int err = errno;
        std::remove(tmp.c_str());
        throw Error(fmt::format("cannot rename '{}' to '{}': {}", tmp, path, std::strerror(err)));
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(fmt::format("cannot open '{}'", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace mmsim::io
