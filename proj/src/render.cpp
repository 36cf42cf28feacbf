#include <cbns/render.hpp>

#include <cbns/integer_part.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace cbns {

namespace {

constexpr double kEnumerationBudgetLog2 = 24.0;
constexpr double kBoxcountBudgetLog2 = 28.0;

int worker_count(int workers) {
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Calls fn(worker, begin, end) over contiguous slices of [0, total).
template <class Fn>
void parallel_slices(std::int64_t total, int workers, Fn fn) {
    const int count = static_cast<int>(std::clamp<std::int64_t>(worker_count(workers), 1, std::max<std::int64_t>(total, 1)));
    if (count == 1) {
        fn(0, std::int64_t{0}, total);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(count));
    for (int w = 0; w < count; ++w) {
        const std::int64_t begin = total * w / count;
        const std::int64_t end = total * (w + 1) / count;
        threads.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
    }
    for (auto& t : threads) t.join();
}

void check_budget(int n, int depth, double budget_log2, const char* what) {
    if (depth < 0) throw DomainError("depth must be nonnegative");
    if (static_cast<double>(depth) * std::log2(static_cast<double>(n)) > budget_log2 + 1e-9) {
        throw DomainError(std::string(what) + ": n^depth exceeds 2^" + std::to_string(static_cast<int>(budget_log2)) +
                          " points; lower the depth or use sampling");
    }
}

std::int64_t ipow(int n, int k) {
    std::int64_t r = 1;
    for (int i = 0; i < k; ++i) r = checked::mul(r, n);
    return r;
}

// Sum_{i=1..len} d_i z^-(first + i - 1) for every digit block, d_1 most significant.
std::vector<Complex> digit_block(Complex z, int n, int first, int len) {
    std::vector<Complex> out{Complex{0.0, 0.0}};
    Complex w = std::pow(z, -first);
    for (int i = 0; i < len; ++i) {
        std::vector<Complex> next;
        next.reserve(out.size() * static_cast<std::size_t>(n));
        for (Complex p : out) {
            for (int d = 0; d < n; ++d) next.push_back(p + static_cast<double>(d) * w);
        }
        out = std::move(next);
        w /= z;
    }
    return out;
}

struct PixelGrid {
    int width;
    int height;
    Window window;

    bool locate(Complex p, int& col, int& row) const {
        const double u = (p.real() - window.lo.real()) / window.width();
        const double v = (window.hi.imag() - p.imag()) / window.height();
        if (!(u >= 0 && u < 1 && v >= 0 && v < 1)) return false;
        col = std::min(width - 1, static_cast<int>(u * width));
        row = std::min(height - 1, static_cast<int>(v * height));
        return true;
    }

    Complex center(int col, int row) const {
        return {window.lo.real() + (col + 0.5) * window.width() / width,
                window.hi.imag() - (row + 0.5) * window.height() / height};
    }
};

// Smallest nonzero colour wins, so the merge is independent of visiting order.
void stamp(std::vector<std::uint8_t>& px, std::size_t index, std::uint8_t colour) {
    if (px[index] == 0 || colour < px[index]) px[index] = colour;
}

void merge_min(std::vector<std::uint8_t>& into, const std::vector<std::uint8_t>& from) {
    for (std::size_t i = 0; i < into.size(); ++i) {
        if (from[i] != 0) stamp(into, i, from[i]);
    }
}

Window square_around(Complex lo, Complex hi, double margin) {
    const Complex mid = 0.5 * (lo + hi);
    const double half = 0.5 * std::max(hi.real() - lo.real(), hi.imag() - lo.imag()) * (1.0 + margin);
    return {mid - Complex(half, half), mid + Complex(half, half)};
}

void check_resolution(int resolution) {
    if (resolution < 1 || resolution > 16384) throw DomainError("resolution must lie in 1..16384");
}

RasterImage blank(int resolution, Window window) {
    RasterImage img;
    img.width = resolution;
    img.height = resolution;
    img.window = window;
    img.pixels.assign(static_cast<std::size_t>(resolution) * resolution, 0);
    return img;
}

// Lattice points drawn as discs of radius 1/4 (the lattice has minimum distance >= 1/2).
RasterImage raster_lattice_points(const System& s, const std::vector<LatticePoint>& points,
                                  const std::vector<std::uint8_t>& colours, int resolution) {
    check_resolution(resolution);
    Complex lo = lattice_to_complex(s, points.front());
    Complex hi = lo;
    for (LatticePoint p : points) {
        const Complex v = lattice_to_complex(s, p);
        lo = {std::min(lo.real(), v.real()), std::min(lo.imag(), v.imag())};
        hi = {std::max(hi.real(), v.real()), std::max(hi.imag(), v.imag())};
    }
    lo -= Complex(1.0, 1.0);
    hi += Complex(1.0, 1.0);
    RasterImage img = blank(resolution, square_around(lo, hi, 0.0));
    const PixelGrid grid{img.width, img.height, img.window};
    const double radius = 0.25;
    const int reach = static_cast<int>(std::ceil(radius / img.window.width() * resolution)) + 1;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Complex v = lattice_to_complex(s, points[i]);
        int col = 0, row = 0;
        if (!grid.locate(v, col, row)) continue;
        for (int r = std::max(0, row - reach); r <= std::min(resolution - 1, row + reach); ++r) {
            for (int c = std::max(0, col - reach); c <= std::min(resolution - 1, col + reach); ++c) {
                if (std::abs(grid.center(c, r) - v) <= radius || (c == col && r == row)) {
                    stamp(img.pixels, static_cast<std::size_t>(r) * resolution + c, colours[i]);
                }
            }
        }
    }
    return img;
}

std::uint8_t digit_pair_colour(int d1, int d2, int n) { return static_cast<std::uint8_t>(1 + (d1 + n * d2) % 255); }

std::uint8_t attractor_colour(const System& s, LatticePoint terminal) {
    const std::vector<LatticePoint> fixed = fixed_points(s);
    const auto it = std::find(fixed.begin(), fixed.end(), terminal);
    if (it == fixed.end()) throw std::logic_error("terminal " + to_string(terminal) + " is not a listed fixed point");
    return static_cast<std::uint8_t>(1 + (it - fixed.begin()));
}

}  // namespace

std::int64_t RasterImage::nonempty() const {
    return static_cast<std::int64_t>(std::count_if(pixels.begin(), pixels.end(), [](std::uint8_t p) { return p != 0; }));
}

std::vector<Complex> fractional_points(Complex z, int n, int depth) {
    check_budget(n, depth, kEnumerationBudgetLog2, "fractional_points");
    return digit_block(z, n, 1, depth);
}

std::vector<LatticePoint> integer_points(const System& s, int digits) {
    check_budget(s.n, digits, kEnumerationBudgetLog2, "integer_points");
    std::vector<LatticePoint> out{LatticePoint{}};
    LatticePoint w{1, 0};
    for (int i = 0; i < digits; ++i) {
        std::vector<LatticePoint> next;
        next.reserve(out.size() * static_cast<std::size_t>(s.n));
        for (LatticePoint p : out) {
            for (int d = 0; d < s.n; ++d) next.push_back(p + static_cast<std::int64_t>(d) * w);
        }
        out = std::move(next);
        w = lattice_mul_z(s, w);
    }
    return out;
}

RasterImage raster_fractional(const System& s, int depth, int resolution, Sampling sampling, int workers) {
    check_resolution(resolution);
    if (depth < 1) throw DomainError("depth must be at least 1");
    if (sampling.samples < 0) throw DomainError("sample count must be nonnegative");
    if (sampling.samples == 0) check_budget(s.n, depth, kEnumerationBudgetLog2, "raster_fractional");

    const auto [lo, hi] = hull_polygon(make_hull_model(s), 256).bounds();
    const RasterImage base = blank(resolution, square_around(lo, hi, 0.02));
    const PixelGrid grid{base.width, base.height, base.window};
    const int n = s.n;

    std::vector<std::vector<std::uint8_t>> buffers;
    const int count = worker_count(workers);
    buffers.assign(static_cast<std::size_t>(count), base.pixels);

    if (sampling.samples == 0) {
        // Head digits d_1..d_h, tail digits d_{h+1}..d_depth.
        const int head = std::min(depth, std::max(2, depth / 2));
        const std::vector<Complex> heads = digit_block(s.z, n, 1, head);
        const std::vector<Complex> tails = digit_block(s.z, n, head + 1, depth - head);
        const std::int64_t per_d1 = ipow(n, head - 1);
        const std::int64_t per_d2 = head >= 2 ? ipow(n, head - 2) : 1;
        parallel_slices(static_cast<std::int64_t>(heads.size()), count, [&](int w, std::int64_t b, std::int64_t e) {
            auto& px = buffers[static_cast<std::size_t>(w)];
            for (std::int64_t i = b; i < e; ++i) {
                const int d1 = static_cast<int>(i / per_d1);
                const int d2 = head >= 2 ? static_cast<int>((i / per_d2) % n) : 0;
                const std::uint8_t colour = digit_pair_colour(d1, d2, n);
                for (Complex t : tails) {
                    int col = 0, row = 0;
                    if (grid.locate(heads[static_cast<std::size_t>(i)] + t, col, row)) {
                        stamp(px, static_cast<std::size_t>(row) * resolution + col, colour);
                    }
                }
            }
        });
    } else {
        constexpr std::int64_t kBlock = 4096;
        std::vector<Complex> weights(static_cast<std::size_t>(depth));
        Complex w = 1.0 / s.z;
        for (auto& x : weights) {
            x = w;
            w /= s.z;
        }
        const std::int64_t blocks = (sampling.samples + kBlock - 1) / kBlock;
        parallel_slices(blocks, count, [&](int wk, std::int64_t b, std::int64_t e) {
            auto& px = buffers[static_cast<std::size_t>(wk)];
            std::vector<int> digits(static_cast<std::size_t>(depth));
            for (std::int64_t blk = b; blk < e; ++blk) {
                std::mt19937_64 rng(sampling.seed + static_cast<std::uint64_t>(blk) * 0x9E3779B97F4A7C15ULL);
                std::uniform_int_distribution<int> digit(0, n - 1);
                const std::int64_t stop = std::min(sampling.samples, (blk + 1) * kBlock);
                for (std::int64_t i = blk * kBlock; i < stop; ++i) {
                    Complex p{0.0, 0.0};
                    for (int j = 0; j < depth; ++j) {
                        digits[static_cast<std::size_t>(j)] = digit(rng);
                        p += static_cast<double>(digits[static_cast<std::size_t>(j)]) * weights[static_cast<std::size_t>(j)];
                    }
                    const int d2 = depth >= 2 ? digits[1] : 0;
                    int col = 0, row = 0;
                    if (grid.locate(p, col, row)) {
                        stamp(px, static_cast<std::size_t>(row) * resolution + col,
                              digit_pair_colour(digits[0], d2, n));
                    }
                }
            }
        });
    }

    RasterImage img = base;
    for (const auto& b : buffers) merge_min(img.pixels, b);
    return img;
}

RasterImage raster_integer(const System& s, int digits, int resolution) {
    const std::vector<LatticePoint> points = integer_points(s, digits);
    std::vector<std::uint8_t> colours;
    colours.reserve(points.size());
    for (LatticePoint p : points) colours.push_back(attractor_colour(s, encode(s, p).terminal));
    return raster_lattice_points(s, points, colours, resolution);
}

RasterImage raster_attractors(const System& s, double radius, int resolution) {
    const auto map = attractor_map(s, radius);
    std::vector<LatticePoint> points;
    std::vector<std::uint8_t> colours;
    for (const auto& [p, t] : map) {
        points.push_back(p);
        colours.push_back(attractor_colour(s, t));
    }
    return raster_lattice_points(s, points, colours, resolution);
}

Polygon coverage_footprint(const System& s) { return hull_polygon(make_hull_model(s), 64); }

CoverageReport coverage_report(const System& s, int level, int resolution, Window window, TranslateSet translates,
                               int samples_per_axis, int workers) {
    check_resolution(resolution);
    if (samples_per_axis < 1 || samples_per_axis > 16) throw DomainError("samples per axis must lie in 1..16");
    if (level < 0) throw DomainError("level must be nonnegative");
    if (static_cast<double>(level) * std::log2(static_cast<double>(s.n)) > 48.0) {
        throw DomainError("coverage level too deep for 64-bit lattice coordinates");
    }
    if (!(window.width() > 0 && window.height() > 0)) throw DomainError("coverage window must have positive area");

    const Polygon cell = coverage_footprint(s);
    const auto [clo, chi] = cell.bounds();
    Complex zk{1.0, 0.0};
    for (int i = 0; i < level; ++i) zk *= s.z;
    const double zr = s.z.real();
    const double zi = s.z.imag();

    const int sub = samples_per_axis;
    // For D <= 1 every lattice point has terminal 0.
    const bool screen_terminals = translates == TranslateSet::IntegerPart && s.D > 1;
    std::vector<std::int64_t> covered(static_cast<std::size_t>(resolution), 0);
    std::vector<std::int64_t> overlapped(static_cast<std::size_t>(resolution), 0);

    // A point c lies in t + p + z^-k H iff w - y lies in H for w = z^k c and
    // the lattice point y = t z^k + (digits of p), and then t = r^k(y).
    auto translates_at = [&](Complex c, std::vector<LatticePoint>& hits) {
        const Complex w = zk * c;
        hits.clear();
        const auto b0 = static_cast<std::int64_t>(std::ceil((w.imag() - chi.imag()) / zi));
        const auto b1 = static_cast<std::int64_t>(std::floor((w.imag() - clo.imag()) / zi));
        for (std::int64_t b = b0; b <= b1; ++b) {
            const double shift = static_cast<double>(b) * zr;
            const auto a0 = static_cast<std::int64_t>(std::ceil(w.real() - chi.real() - shift));
            const auto a1 = static_cast<std::int64_t>(std::floor(w.real() - clo.real() - shift));
            for (std::int64_t a = a0; a <= a1; ++a) {
                const LatticePoint y{a, b};
                if (!cell.contains(w - lattice_to_complex(s, y))) continue;
                const LatticePoint t = reduce_times(s, y, level);
                if (screen_terminals && encode(s, t).terminal != LatticePoint{}) continue;
                if (std::find(hits.begin(), hits.end(), t) == hits.end()) hits.push_back(t);
            }
        }
    };

    const double px = window.width() / resolution;
    const double py = window.height() / resolution;
    parallel_slices(resolution, workers, [&](int, std::int64_t rb, std::int64_t re) {
        std::vector<LatticePoint> hits;
        for (std::int64_t row = rb; row < re; ++row) {
            std::int64_t cov = 0, ovl = 0;
            for (int col = 0; col < resolution; ++col) {
                for (int sy = 0; sy < sub; ++sy) {
                    for (int sx = 0; sx < sub; ++sx) {
                        const Complex c{window.lo.real() + (col + (sx + 0.5) / sub) * px,
                                        window.hi.imag() - (static_cast<double>(row) + (sy + 0.5) / sub) * py};
                        translates_at(c, hits);
                        if (!hits.empty()) ++cov;
                        if (hits.size() >= 2) ++ovl;
                    }
                }
            }
            covered[static_cast<std::size_t>(row)] = cov;
            overlapped[static_cast<std::size_t>(row)] = ovl;
        }
    });

    CoverageReport r;
    r.level = level;
    r.resolution = resolution;
    r.samples_per_axis = sub;
    r.window = window;
    r.translates = translates;
    r.total_samples = static_cast<std::int64_t>(resolution) * resolution * sub * sub;
    for (std::size_t i = 0; i < covered.size(); ++i) {
        r.covered_samples += covered[i];
        r.overlap_samples += overlapped[i];
    }
    r.covered_fraction = static_cast<double>(r.covered_samples) / static_cast<double>(r.total_samples);
    r.overlap_fraction = static_cast<double>(r.overlap_samples) / static_cast<double>(r.total_samples);
    return r;
}

BoxCount boxcount(Complex zval, int depth, int grid, int workers) {
    if (!(std::abs(zval) > 1.0)) throw DomainError("box counting needs |z| > 1");
    const int n = static_cast<int>(std::lround(std::norm(zval)));
    if (n < 2) throw DomainError("box counting needs round(|z|^2) >= 2");
    if (depth < 1) throw DomainError("depth must be at least 1");
    if (grid < 16 || grid % 16 != 0 || grid > 8192) throw DomainError("grid must be a multiple of 16 in 16..8192");
    check_budget(n, depth, kBoxcountBudgetLog2, "boxcount");

    // Exact bounding box of the finite cloud: each term contributes its own extremes.
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    Complex w = 1.0 / zval;
    for (int i = 1; i <= depth; ++i) {
        const Complex top = static_cast<double>(n - 1) * w;
        x0 += std::min(0.0, top.real());
        x1 += std::max(0.0, top.real());
        y0 += std::min(0.0, top.imag());
        y1 += std::max(0.0, top.imag());
        w /= zval;
    }
    const double side = std::max({x1 - x0, y1 - y0, 1e-300}) * (1.0 + 1e-9);

    const int head = depth / 2;
    const std::vector<Complex> heads = digit_block(zval, n, 1, head);
    const std::vector<Complex> tails = digit_block(zval, n, head + 1, depth - head);
    const auto cells = static_cast<std::size_t>(grid) * grid;
    const int count = worker_count(workers);
    std::vector<std::vector<std::uint8_t>> bitmaps(static_cast<std::size_t>(count));

    parallel_slices(static_cast<std::int64_t>(heads.size()), count, [&](int wk, std::int64_t b, std::int64_t e) {
        auto& bits = bitmaps[static_cast<std::size_t>(wk)];
        bits.assign(cells, 0);
        for (std::int64_t i = b; i < e; ++i) {
            const Complex h = heads[static_cast<std::size_t>(i)];
            for (Complex t : tails) {
                const Complex p = h + t;
                const int ix = std::clamp(static_cast<int>((p.real() - x0) / side * grid), 0, grid - 1);
                const int iy = std::clamp(static_cast<int>((p.imag() - y0) / side * grid), 0, grid - 1);
                bits[static_cast<std::size_t>(iy) * grid + ix] = 1;
            }
        }
    });
    std::vector<std::uint8_t> fine(cells, 0);
    for (const auto& bits : bitmaps) {
        if (bits.empty()) continue;
        for (std::size_t i = 0; i < cells; ++i) fine[i] |= bits[i];
    }

    BoxCount out;
    std::vector<std::uint8_t> level = fine;
    int g = grid;
    std::vector<std::pair<int, std::int64_t>> ladder;
    for (int step = 0; step < 5; ++step) {
        ladder.emplace_back(g, static_cast<std::int64_t>(std::count(level.begin(), level.end(), std::uint8_t{1})));
        if (step == 4) break;
        const int half = g / 2;
        std::vector<std::uint8_t> coarse(static_cast<std::size_t>(half) * half, 0);
        for (int y = 0; y < g; ++y) {
            for (int x = 0; x < g; ++x) {
                if (level[static_cast<std::size_t>(y) * g + x]) coarse[static_cast<std::size_t>(y / 2) * half + x / 2] = 1;
            }
        }
        level = std::move(coarse);
        g = half;
    }
    std::reverse(ladder.begin(), ladder.end());

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [gg, occ] : ladder) {
        out.grids.push_back(gg);
        out.occupied.push_back(occ);
        const double lx = std::log(static_cast<double>(gg));
        const double ly = std::log(static_cast<double>(occ));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double m = static_cast<double>(ladder.size());
    out.dimension = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return out;
}

double boxcount_dimension(Complex zval, int depth, int grid, int workers) {
    return boxcount(zval, depth, grid, workers).dimension;
}

std::vector<SweepRow> dimension_sweep(int n, double phi_min, double phi_max, int steps, int depth, int grid,
                                      int workers) {
    if (n < 2) throw DomainError("sweep needs n >= 2");
    if (steps < 1) throw DomainError("sweep needs at least one step");
    if (!(phi_min <= phi_max)) throw DomainError("phi_min must not exceed phi_max");
    std::vector<SweepRow> rows(static_cast<std::size_t>(steps));
    const double r = std::sqrt(static_cast<double>(n));
    parallel_slices(steps, workers, [&](int, std::int64_t b, std::int64_t e) {
        for (std::int64_t j = b; j < e; ++j) {
            const double phi = steps == 1 ? phi_min : phi_min + (phi_max - phi_min) * static_cast<double>(j) / (steps - 1);
            rows[static_cast<std::size_t>(j)] = {phi, boxcount_dimension(std::polar(r, phi), depth, grid, 1)};
        }
    });
    return rows;
}

}  // namespace cbns
