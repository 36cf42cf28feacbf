#pragma once

// Rasters of the integer and fractional sets, tiling coverage and box-counting
// dimension estimates.
//
// Every entry point taking `workers` splits its work into fixed chunks and
// merges per-worker buffers with an order-independent rule, so the output is
// bit-identical for any worker count. workers <= 0 means hardware concurrency.

#include <cbns/hull.hpp>
#include <cbns/lattice.hpp>

#include <cstdint>
#include <vector>

namespace cbns {

// Axis-aligned rectangle in the complex plane.
struct Window {
    Complex lo;  // (x0, y0)
    Complex hi;  // (x1, y1)

    double width() const { return hi.real() - lo.real(); }
    double height() const { return hi.imag() - lo.imag(); }
};

// Row 0 is the top of the window (largest imaginary part). Pixel value 0 is
// background; other values are palette indices.
struct RasterImage {
    int width = 0;
    int height = 0;
    Window window;
    std::vector<std::uint8_t> pixels;

    std::uint8_t at(int col, int row) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
    std::int64_t nonempty() const;
};

// Sum_{i=1..depth} d_i z^-i over all n^depth digit strings, ordered by the
// digit string read as a base-n number with d_1 most significant.
std::vector<Complex> fractional_points(Complex z, int n, int depth);

// Sum_{i<digits} d_i z^i, exact.
std::vector<LatticePoint> integer_points(const System& s, int digits);

// Sampling replaces exhaustive enumeration when n^depth is too large.
struct Sampling {
    std::int64_t samples = 0;  // 0: exhaustive
    std::uint64_t seed = 1;
};

// Pixel colour 1 + d_1 + n d_2 (the two most significant fractional digits).
// The window is the hull's bounding box made square.
RasterImage raster_fractional(const System& s, int depth, int resolution, Sampling sampling = {}, int workers = 0);

// One colour per attractor of each point's terminal: 1 + index into
// fixed_points(s).
RasterImage raster_integer(const System& s, int digits, int resolution);

// Lattice ball of `radius` coloured by attractor.
RasterImage raster_attractors(const System& s, double radius, int resolution);

enum class TranslateSet {
    AllLattice,   // every lattice point
    IntegerPart,  // lattice points whose encode terminal is 0
};

struct CoverageReport {
    double covered_fraction = 0;
    double overlap_fraction = 0;
    std::int64_t covered_samples = 0;
    std::int64_t overlap_samples = 0;
    std::int64_t total_samples = 0;
    int level = 0;
    int resolution = 0;
    int samples_per_axis = 1;
    Window window;
    TranslateSet translates = TranslateSet::IntegerPart;
};

// Level-`level` cells t + p + z^-level conv(F_z) (p a level fractional point,
// t a translate) are stamped onto a resolution x resolution pixel grid,
// sampled at samples_per_axis^2 evenly spaced points per pixel. A sample is
// covered if some translate reaches it and overlapped if two distinct
// translates do; fractions are over all samples.
CoverageReport coverage_report(const System& s, int level, int resolution, Window window,
                               TranslateSet translates = TranslateSet::IntegerPart, int samples_per_axis = 3,
                               int workers = 0);

// Outer hull polygon used as the per-cell footprint by coverage_report.
Polygon coverage_footprint(const System& s);

struct BoxCount {
    std::vector<int> grids;              // boxes per axis, coarse to fine
    std::vector<std::int64_t> occupied;  // matching occupied box counts
    double dimension = 0;                // least-squares slope
};

// Point cloud sum_{i=1..depth} d_i zval^-i with digits 0..round(|zval|^2)-1,
// counted on a ladder of five grids grid/16, ..., grid over its bounding
// square. grid must be a multiple of 16.
BoxCount boxcount(Complex zval, int depth, int grid, int workers = 0);

double boxcount_dimension(Complex zval, int depth, int grid, int workers = 0);

struct SweepRow {
    double phi = 0;
    double estimate = 0;
};

// Box-counting estimate for zval = sqrt(n) e^{i phi} at `steps` evenly spaced
// phi in [phi_min, phi_max] (endpoints included).
std::vector<SweepRow> dimension_sweep(int n, double phi_min, double phi_max, int steps, int depth, int grid,
                                      int workers = 0);

}  // namespace cbns
