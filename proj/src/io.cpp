#include <cbns/io.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace cbns {

namespace {

Rgb hsv(double h, double s, double v) {
    const double c = v * s;
    const double hp = std::fmod(h, 360.0) / 60.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    switch (static_cast<int>(hp)) {
        case 0: r = c, g = x; break;
        case 1: r = x, g = c; break;
        case 2: g = c, b = x; break;
        case 3: g = x, b = c; break;
        case 4: r = x, b = c; break;
        default: r = c, b = x; break;
    }
    const double m = v - c;
    auto byte = [](double u) { return static_cast<std::uint8_t>(std::lround(std::clamp(u, 0.0, 1.0) * 255.0)); };
    return {byte(r + m), byte(g + m), byte(b + m)};
}

std::array<Rgb, 256> build_palette() {
    std::array<Rgb, 256> p{};
    p[0] = {255, 255, 255};
    for (std::size_t i = 1; i < p.size(); ++i) {
        p[i] = hsv(137.50776405 * static_cast<double>(i - 1), 0.70, 0.85);
    }
    return p;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

const std::array<Rgb, 256>& palette() {
    static const std::array<Rgb, 256> p = build_palette();
    return p;
}

std::string encode_ppm(const RasterImage& image) {
    std::string out = "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
    out.reserve(out.size() + image.pixels.size() * 3);
    const auto& pal = palette();
    for (std::uint8_t idx : image.pixels) {
        const Rgb c = pal[idx];
        out += static_cast<char>(c.r);
        out += static_cast<char>(c.g);
        out += static_cast<char>(c.b);
    }
    return out;
}

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

std::string encode_svg(const std::vector<SvgPath>& paths, double stroke_width) {
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    bool any = false;
    for (const auto& p : paths) {
        for (Complex v : p.points) {
            const double x = v.real(), y = -v.imag();
            if (!any) {
                x0 = x1 = x;
                y0 = y1 = y;
                any = true;
            }
            x0 = std::min(x0, x), x1 = std::max(x1, x);
            y0 = std::min(y0, y), y1 = std::max(y1, y);
        }
    }
    const double span = std::max({x1 - x0, y1 - y0, 1e-9});
    const double margin = 0.05 * span;
    const double sw = stroke_width > 0 ? stroke_width : span / 500.0;

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + format_number(x0 - margin) + " " +
           format_number(y0 - margin) + " " + format_number(x1 - x0 + 2 * margin) + " " +
           format_number(y1 - y0 + 2 * margin) + "\" width=\"800\" height=\"800\">\n";
    for (const auto& p : paths) {
        if (p.points.empty()) continue;
        std::string d;
        for (std::size_t i = 0; i < p.points.size(); ++i) {
            d += (i == 0 ? "M" : " L") + format_number(p.points[i].real()) + "," + format_number(-p.points[i].imag());
        }
        if (p.closed) d += " Z";
        out += "<path d=\"" + d + "\" fill=\"" + p.fill + "\" stroke=\"" + p.stroke + "\" stroke-width=\"" +
               format_number(sw) + "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string encode_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += csv_field(cells[i]);
        }
        out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) throw IoError("failed writing " + path);
}

}  // namespace cbns
