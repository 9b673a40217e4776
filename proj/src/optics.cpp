#include "ttt/optics.hpp"

#include <algorithm>
#include <cmath>

namespace ttt::optics {

namespace {

[[noreturn]] void bad_geometry(const std::string& what) { throw Error(Errc::InvalidGeometry, what); }

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

template <typename PixelFn>
std::string write_pgm(int width, int height, PixelFn value) {
  std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  out.reserve(out.size() + static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double v = std::clamp(value(x, y), 0.0, 1.0);
      out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
    }
  }
  return out;
}

}  // namespace

GeometryConfig GeometryConfig::standard() { return centered(240, 320, 60, 10, 30); }

GeometryConfig GeometryConfig::centered(int width, int height, int square_side, int gap, int strip_height) {
  GeometryConfig g;
  g.width = width;
  g.height = height;
  g.gap = gap;
  const int grid = 3 * square_side + 2 * gap;
  const int x0 = (width - grid) / 2;
  const int y0 = (height - grid) / 2;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      g.squares[r * 3 + c] = Rect{x0 + c * (square_side + gap), y0 + r * (square_side + gap), square_side, square_side};
    }
  }
  g.top_strip = Rect{0, 0, width, strip_height};
  g.bottom_strip = Rect{0, height - strip_height, width, strip_height};
  return g;
}

const Rect& GeometryConfig::square(int index) const {
  check_square(index);
  return squares[index - 1];
}

void GeometryConfig::validate() const {
  if (width <= 0 || height <= 0) bad_geometry("frame must have positive size");
  std::vector<Rect> regions(squares.begin(), squares.end());
  regions.push_back(top_strip);
  regions.push_back(bottom_strip);
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const Rect& r = regions[i];
    if (r.width <= 0 || r.height <= 0) bad_geometry("region " + std::to_string(i + 1) + " is empty");
    if (r.x < 0 || r.y < 0 || r.x + r.width > width || r.y + r.height > height) {
      bad_geometry("region " + std::to_string(i + 1) + " leaves the frame");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (r.overlaps(regions[j])) {
        bad_geometry("regions " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " overlap");
      }
    }
  }
}

double PhotometryConfig::reflectance(SquareState s) const {
  switch (s) {
    case SquareState::HumanOccupied: return r_black;
    case SquareState::Empty: return r_gray;
    case SquareState::SpiOccupied: return r_white;
  }
  return r_background;
}

void PhotometryConfig::validate() const {
  if (!(0.0 <= r_black && r_black < r_gray && r_gray < r_white && r_white <= 1.0)) {
    throw Error(Errc::InvalidPhotometry, "reflectances must satisfy 0 <= black < gray < white <= 1");
  }
  if (!in_unit_interval(r_background)) throw Error(Errc::InvalidPhotometry, "background outside [0, 1]");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw Error(Errc::InvalidPhotometry, "noise sigma must be finite and non-negative");
  }
}

void Thresholds::validate() const {
  if (!(0.0 < t_low && t_low < t_high && t_high < 1.0)) {
    throw Error(Errc::InvalidPhotometry, "thresholds must satisfy 0 < low < high < 1");
  }
}

SceneImage::SceneImage(int width, int height, double fill)
    : width_(width), height_(height), pixels_(static_cast<std::size_t>(width) * height, fill) {}

void SceneImage::fill(const Rect& r, double v) {
  for (int y = r.y; y < r.y + r.height; ++y) {
    auto row = pixels_.begin() + static_cast<std::ptrdiff_t>(index(r.x, y));
    std::fill(row, row + r.width, v);
  }
}

IlluminationMask::IlluminationMask(int width, int height, MaskKind kind)
    : width_(width), height_(height), kind_(kind), bits_(static_cast<std::size_t>(width) * height, 0) {}

void IlluminationMask::light(const Rect& r) {
  for (int y = r.y; y < r.y + r.height; ++y) {
    for (int x = r.x; x < r.x + r.width; ++x) bits_[static_cast<std::size_t>(y) * width_ + x] = 1;
  }
  rebuild_runs();
}

void IlluminationMask::light_pixel(int x, int y) {
  bits_[static_cast<std::size_t>(y) * width_ + x] = 1;
  rebuild_runs();
}

void IlluminationMask::rebuild_runs() {
  runs_.clear();
  lit_ = 0;
  for (int y = 0; y < height_; ++y) {
    const std::uint8_t* row = bits_.data() + static_cast<std::size_t>(y) * width_;
    int x = 0;
    while (x < width_) {
      if (!row[x]) {
        ++x;
        continue;
      }
      const int start = x;
      while (x < width_ && row[x]) ++x;
      runs_.push_back(Run{y, start, x});
      lit_ += x - start;
    }
  }
}

SceneImage render_board(const Board& board, const GeometryConfig& geom, const PhotometryConfig& photo) {
  geom.validate();
  photo.validate();
  SceneImage scene(geom.width, geom.height, photo.r_background);
  for (int sq = 1; sq <= kSquares; ++sq) scene.fill(geom.square(sq), photo.reflectance(board.at(sq)));
  return scene;
}

IlluminationMask detection_mask(int square, const GeometryConfig& geom) {
  geom.validate();
  check_square(square);
  IlluminationMask mask(geom.width, geom.height, MaskKind{MaskKind::Type::Detection, square});
  mask.light(geom.square(square));
  return mask;
}

std::array<IlluminationMask, kSquares> detection_masks(const GeometryConfig& geom) {
  return {detection_mask(1, geom), detection_mask(2, geom), detection_mask(3, geom),
          detection_mask(4, geom), detection_mask(5, geom), detection_mask(6, geom),
          detection_mask(7, geom), detection_mask(8, geom), detection_mask(9, geom)};
}

std::optional<IlluminationMask> display_pattern_mask(const OutputCode& code, const GeometryConfig& geom) {
  const auto pattern = code.pattern_index();
  if (!pattern) return std::nullopt;
  geom.validate();
  IlluminationMask mask(geom.width, geom.height, MaskKind{MaskKind::Type::Display, *pattern});
  if (code.kind() == OutputCode::Kind::HumanWon) {
    mask.light(geom.bottom_strip);
    return mask;
  }
  mask.light(geom.square(code.square()));
  if (code.winning()) mask.light(geom.top_strip);
  return mask;
}

double inner_product(const SceneImage& scene, const IlluminationMask& mask) {
  if (scene.width() != mask.width() || scene.height() != mask.height()) {
    throw Error(Errc::DimensionMismatch, "scene is " + std::to_string(scene.width()) + "x" +
                                             std::to_string(scene.height()) + ", mask is " +
                                             std::to_string(mask.width()) + "x" + std::to_string(mask.height()));
  }
  const auto& px = scene.pixels();
  double sum = 0.0;
  for (const auto& run : mask.runs()) {
    const std::size_t row = static_cast<std::size_t>(run.y) * scene.width();
    for (int x = run.x0; x < run.x1; ++x) sum += px[row + x];
  }
  return sum;
}

double measure(const SceneImage& scene, const IlluminationMask& mask, const PhotometryConfig& photo, Rng& rng) {
  if (mask.lit_count() == 0) throw Error(Errc::EmptyMask, "illumination mask has no lit pixels");
  const double signal = inner_product(scene, mask) / static_cast<double>(mask.lit_count());
  if (photo.noise_sigma <= 0.0) return signal;
  std::normal_distribution<double> noise(0.0, photo.noise_sigma);
  return signal + noise(rng);
}

MeasurementVector scan_state(const SceneImage& scene, const std::array<IlluminationMask, kSquares>& masks,
                             const PhotometryConfig& photo, Rng& rng) {
  MeasurementVector m{};
  for (int i = 0; i < kSquares; ++i) m[i] = measure(scene, masks[i], photo, rng);
  return m;
}

MeasurementVector scan_state(const SceneImage& scene, const GeometryConfig& geom, const PhotometryConfig& photo,
                             Rng& rng) {
  return scan_state(scene, detection_masks(geom), photo, rng);
}

Board classify(const MeasurementVector& m, const Thresholds& th) {
  std::array<SquareState, kSquares> squares{};
  for (int i = 0; i < kSquares; ++i) {
    if (m[i] < th.t_low) squares[i] = SquareState::HumanOccupied;
    else if (m[i] > th.t_high) squares[i] = SquareState::SpiOccupied;
    else squares[i] = SquareState::Empty;
  }
  return Board(squares);
}

Thresholds default_thresholds(const PhotometryConfig& photo) {
  photo.validate();
  return Thresholds{(photo.r_black + photo.r_gray) / 2.0, (photo.r_gray + photo.r_white) / 2.0};
}

std::string to_pgm(const SceneImage& scene) {
  return write_pgm(scene.width(), scene.height(), [&](int x, int y) { return scene.at(x, y); });
}

std::string to_pgm(const IlluminationMask& mask) {
  return write_pgm(mask.width(), mask.height(), [&](int x, int y) { return mask.lit(x, y) ? 1.0 : 0.0; });
}

}  // namespace ttt::optics
