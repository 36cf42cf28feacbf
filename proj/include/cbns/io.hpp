#pragma once

// File formats: binary PPM (P6, maxval 255), SVG 1.1 and CSV.

#include <cbns/render.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace cbns {

struct Rgb {
    std::uint8_t r = 255, g = 255, b = 255;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Index 0 is white; indices 1.. step the hue by the golden angle at fixed
// saturation and value, so neighbouring indices stay distinguishable.
const std::array<Rgb, 256>& palette();

std::string encode_ppm(const RasterImage& image);

struct SvgPath {
    std::vector<Complex> points;
    bool closed = true;
    std::string stroke = "#000000";
    std::string fill = "none";
};

// One <path> per entry. The view box is the union bounding box plus a 5%
// margin; y is negated so the imaginary axis points up.
std::string encode_svg(const std::vector<SvgPath>& paths, double stroke_width = 0.0);

// %.9g
std::string format_number(double value);

std::string encode_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

// Throws IoError when the file cannot be written completely.
void write_file(const std::string& path, const std::string& content);

}  // namespace cbns
