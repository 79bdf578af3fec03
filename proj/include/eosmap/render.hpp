// Emitters: binary portable pixmaps (P6) of bifurcation diagrams and
// iterate graphs, and full-precision CSV for every analysis product.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "eosmap/scan.hpp"

namespace eosmap {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    bool operator==(const Rgb&) const = default;
};

inline constexpr Rgb kYellow{255, 215, 0};
inline constexpr Rgb kOlive{128, 128, 0};
inline constexpr Rgb kBlue{0, 0, 255};
inline constexpr Rgb kGreen{0, 128, 0};
inline constexpr Rgb kWhite{255, 255, 255};
inline constexpr Rgb kGray{160, 160, 160};
inline constexpr Rgb kBlack{0, 0, 0};

struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // RGB, rows top-down

    Image() = default;
    Image(int w, int h, Rgb fill);
    void set(int x, int y, Rgb c);
    Rgb get(int x, int y) const;
};

// Binary portable pixmap, maxval 255. Byte-identical for identical images.
void write_ppm(const Image& img, std::ostream& out);
void write_ppm(const Image& img, const std::string& path);

struct RenderSpec {
    int width = 0;
    int height = 0;
    Interval x_axis;  // parameter range
    Interval y_axis;  // value range
    // Per-seed point colors, drawn in order: later seeds overwrite earlier.
    std::vector<Rgb> seed_colors{kYellow, kBlue};
    Rgb critical_color = kGreen;
    Rgb background = kWhite;
};

// Default spec: one pixel column per parameter sample; EOS y axis is the
// union of the swept domains [b_min-1, b_max].
RenderSpec default_render_spec(const BifurcationScan& scan, int width = 0, int height = 1000);

// One pixel per stored point (nearest-pixel mapping), seed colors in draw
// order, green horizontal lines at the critical points of the mid-range map.
Image render_scan(const BifurcationScan& scan, const RenderSpec& spec);

struct IterateGraph {
    std::vector<double> xs;
    std::vector<double> values;        // F^n at xs
    std::vector<double> fixed_points;  // attracting fixed points of F^n
    Image image;
};

// Samples F^n over the domain; the image shows the curve, the identity
// diagonal, and green horizontal+vertical lines through the attracting
// fixed points of F^n (found from the critical-point trajectories).
IterateGraph render_iterate_graph(const MapInstance& m, int n, int resolution, int width = 800,
                                  int height = 800);

// CSV (decimal, 17 significant digits, newline-terminated rows).
void write_scan_csv(const BifurcationScan& scan, std::ostream& out);     // b,seed,iter,x
void write_branch_csv(const Branch& branch, std::ostream& out);          // b,P,multiplier,dPdb
void write_windows_csv(const std::vector<Window>& ws, std::ostream& out);
void write_graph_csv(const IterateGraph& g, std::ostream& out);          // x,Fn_x
void write_jumps_csv(const std::vector<Jump>& js, std::ostream& out);    // b_left,b_right,gap

struct ScanPoint {
    double param = 0.0;
    int seed = 0;
    int iter = 0;
    double x = 0.0;
    bool operator==(const ScanPoint&) const = default;
};

// Reads back what write_scan_csv emitted; exact to the bit.
std::vector<ScanPoint> parse_scan_csv(std::istream& in);
std::vector<ScanPoint> scan_points(const BifurcationScan& scan);

std::string format_g17(double v);

}  // namespace eosmap
