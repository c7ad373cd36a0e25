#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace siegellab::io {

/// Writes content to path atomically (temp file in the same directory, then
/// rename). Throws std::runtime_error on I/O failure.
void atomic_write(const std::string& path, const std::string& content);

/// Binary P5 pixmap, one byte per pixel, with the resolved run config
/// embedded as a single header comment line.
std::string encode_p5(int width, int height, const std::vector<std::uint8_t>& pixels,
                      const std::string& config_comment);

}  // namespace siegellab::io
