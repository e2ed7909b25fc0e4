#include "hicl/io.hpp"

#include <zlib.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hicl/error.hpp"

namespace hicl {

namespace {

bool looks_gzipped(const std::filesystem::path& path) {
    if (path.extension() == ".gz") return true;
    std::ifstream in(path, std::ios::binary);
    unsigned char magic[2] = {0, 0};
    in.read(reinterpret_cast<char*>(magic), 2);
    return in.gcount() == 2 && magic[0] == 0x1f && magic[1] == 0x8b;
}

std::string read_gzip(const std::filesystem::path& path) {
    gzFile gz = gzopen(path.string().c_str(), "rb");
    if (!gz) throw data_error("cannot open " + path.string());
    std::string out;
    char buf[1 << 16];
    int n;
    while ((n = gzread(gz, buf, sizeof(buf))) > 0) out.append(buf, static_cast<size_t>(n));
    int err = 0;
    gzerror(gz, &err);
    gzclose(gz);
    if (n < 0 || err != Z_OK) throw data_error("gzip read failed for " + path.string());
    return out;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw data_error("file not found: " + path.string());
    if (looks_gzipped(path)) return read_gzip(path);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw data_error("cannot write " + path.string());
    out << content;
    if (!out) throw data_error("write failed for " + path.string());
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace hicl
