#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ttt/board.hpp"
#include "ttt/lookup_table.hpp"

namespace ttt::optics {

// Half-open pixel rectangle [x, x + width) x [y, y + height).
struct Rect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  long area() const { return static_cast<long>(width) * height; }
  bool contains(int px, int py) const { return px >= x && px < x + width && py >= y && py < y + height; }
  bool overlaps(const Rect& o) const {
    return x < o.x + o.width && o.x < x + width && y < o.y + o.height && o.y < y + height;
  }
  bool operator==(const Rect&) const = default;
};

// Layout of the printed board in the projector frame: nine square cells plus
// the two status strips ("You lose" on top, "You win" at the bottom).
struct GeometryConfig {
  int width = 0;
  int height = 0;
  int gap = 0;
  std::array<Rect, kSquares> squares{};
  Rect top_strip;
  Rect bottom_strip;

  // 240x320 frame, 60 px cells with 10 px gaps, 30 px strips at top and bottom.
  static GeometryConfig standard();
  // Grid centered in the frame between the strips; strips span the full width.
  static GeometryConfig centered(int width, int height, int square_side, int gap, int strip_height);

  const Rect& square(int index) const;  // 1-based
  // Throws InvalidGeometry unless all 11 regions are nonempty, inside the frame
  // and pairwise disjoint.
  void validate() const;
};

struct PhotometryConfig {
  double r_black = 0.1;
  double r_gray = 0.5;
  double r_white = 0.9;
  double r_background = 0.0;
  double noise_sigma = 0.02;
  std::uint64_t seed = 0;

  double reflectance(SquareState s) const;
  // Throws InvalidPhotometry unless 0 <= black < gray < white <= 1, background
  // in [0, 1] and sigma >= 0.
  void validate() const;
};

struct Thresholds {
  double t_low = 0.3;
  double t_high = 0.7;

  void validate() const;
};

// Per-pixel reflectance of the board, row-major.
class SceneImage {
 public:
  SceneImage(int width, int height, double fill = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  double at(int x, int y) const { return pixels_[index(x, y)]; }
  void set(int x, int y, double v) { pixels_[index(x, y)] = v; }
  void fill(const Rect& r, double v);
  const std::vector<double>& pixels() const { return pixels_; }

 private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }
  int width_;
  int height_;
  std::vector<double> pixels_;
};

struct MaskKind {
  enum class Type : std::uint8_t { Detection, Display };
  Type type = Type::Detection;
  int index = 1;  // square 1..9 for detection, pattern 1..19 for display

  bool operator==(const MaskKind&) const = default;
};

// Binary projector pattern. Lit pixels are also kept as horizontal runs so the
// inner product only visits the illuminated area.
class IlluminationMask {
 public:
  IlluminationMask(int width, int height, MaskKind kind);

  void light(const Rect& r);
  void light_pixel(int x, int y);

  int width() const { return width_; }
  int height() const { return height_; }
  MaskKind kind() const { return kind_; }
  bool lit(int x, int y) const { return bits_[static_cast<std::size_t>(y) * width_ + x] != 0; }
  long lit_count() const { return lit_; }

  struct Run {
    int y;
    int x0;
    int x1;  // exclusive
  };
  const std::vector<Run>& runs() const { return runs_; }

 private:
  void rebuild_runs();
  int width_;
  int height_;
  MaskKind kind_;
  std::vector<std::uint8_t> bits_;
  std::vector<Run> runs_;
  long lit_ = 0;
};

using MeasurementVector = std::array<double, kSquares>;
using Rng = std::mt19937_64;

SceneImage render_board(const Board& board, const GeometryConfig& geom, const PhotometryConfig& photo);

IlluminationMask detection_mask(int square, const GeometryConfig& geom);
std::array<IlluminationMask, kSquares> detection_masks(const GeometryConfig& geom);
std::optional<IlluminationMask> display_pattern_mask(const OutputCode& code, const GeometryConfig& geom);

// Raw bucket signal: sum over pixels of mask * scene. Throws DimensionMismatch.
double inner_product(const SceneImage& scene, const IlluminationMask& mask);

// Inner product normalized by the lit area plus N(0, sigma) detector noise.
// Throws DimensionMismatch or EmptyMask.
double measure(const SceneImage& scene, const IlluminationMask& mask, const PhotometryConfig& photo, Rng& rng);

MeasurementVector scan_state(const SceneImage& scene, const GeometryConfig& geom, const PhotometryConfig& photo,
                             Rng& rng);
MeasurementVector scan_state(const SceneImage& scene, const std::array<IlluminationMask, kSquares>& masks,
                             const PhotometryConfig& photo, Rng& rng);

Board classify(const MeasurementVector& m, const Thresholds& th);
Thresholds default_thresholds(const PhotometryConfig& photo);

// Binary PGM (P5, 8-bit), value = round(reflectance * 255).
std::string to_pgm(const SceneImage& scene);
std::string to_pgm(const IlluminationMask& mask);

}  // namespace ttt::optics
