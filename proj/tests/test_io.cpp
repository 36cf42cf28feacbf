#include <cbns/io.hpp>

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <regex>
#include <set>

using namespace cbns;

TEST_CASE("palette") {
    const auto& p = palette();
    CHECK(p[0] == Rgb{255, 255, 255});
    std::set<std::tuple<int, int, int>> seen;
    for (int i = 1; i < 256; ++i) seen.insert({p[i].r, p[i].g, p[i].b});
    CHECK(seen.size() > 200);
    CHECK_FALSE(p[1] == p[2]);
}

TEST_CASE("binary pixmap") {
    RasterImage img;
    img.width = 3;
    img.height = 2;
    img.pixels = {0, 1, 2, 3, 0, 1};
    const std::string ppm = encode_ppm(img);
    const std::string header = "P6\n3 2\n255\n";
    REQUIRE(ppm.size() == header.size() + 3 * 6);
    CHECK(ppm.substr(0, header.size()) == header);
    const auto& p = palette();
    CHECK(static_cast<unsigned char>(ppm[header.size()]) == 255);
    CHECK(static_cast<unsigned char>(ppm[header.size() + 3]) == p[1].r);
    CHECK(static_cast<unsigned char>(ppm[header.size() + 4]) == p[1].g);
    CHECK(static_cast<unsigned char>(ppm[header.size() + 5]) == p[1].b);
}

TEST_CASE("svg") {
    SvgPath square{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true, "#ff0000", "none"};
    SvgPath line{{{0, 0}, {2, 2}}, false};
    const std::string svg = encode_svg({square, line}, 0.01);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("version=\"1.1\"") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    auto count = [&](const std::regex& re) {
        return std::distance(std::sregex_iterator(svg.begin(), svg.end(), re), std::sregex_iterator());
    };
    CHECK(count(std::regex("<path ")) == 2);
    CHECK(svg.find("#ff0000") != std::string::npos);
    // The closed path ends with Z, the open one does not.
    CHECK(count(std::regex(" Z\"")) == 1);
    // y is negated: the point (2, 2) is drawn at y = -2.
    CHECK(svg.find("2,-2") != std::string::npos);
}

TEST_CASE("csv") {
    CHECK(format_number(1.2107605331234) == "1.21076053");
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(-3) == "-3");
    const std::string csv = encode_csv({"n", "D", "H"}, {{"2", "1", "1.21076053"}, {"a,b", "x\"y", ""}});
    CHECK(csv == "n,D,H\n2,1,1.21076053\n\"a,b\",\"x\"\"y\",\n");
}

TEST_CASE("file writing") {
    const auto dir = std::filesystem::temp_directory_path() / "cbns_io_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "out.txt").string();
    write_file(path, "hello\n");
    std::ifstream in(path, std::ios::binary);
    const std::string back{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    CHECK(back == "hello\n");
    std::filesystem::remove_all(dir);

    CHECK_THROWS_AS(write_file("/nonexistent-dir/x/out.txt", "x"), IoError);
}
