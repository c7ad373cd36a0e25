#include "siegellab/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace siegellab::io {

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw std::runtime_error("atomic_write: short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("atomic_write: rename failed for " + path);
    }
}

std::string encode_p5(int width, int height, const std::vector<std::uint8_t>& pixels,
                      const std::string& config_comment) {
    if (static_cast<std::size_t>(width) * static_cast<std::size_t>(height) != pixels.size())
        throw std::invalid_argument("encode_p5: pixel count mismatch");
    std::string comment = config_comment;
    for (char& c : comment)
        if (c == '\n' || c == '\r') c = ' ';
    std::string out = "P5\n";
    if (!comment.empty()) out += "# " + comment + "\n";
    out += std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(pixels.data()), pixels.size());
    return out;
}

}  // namespace siegellab::io
