#include "lcdvf/image_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace lcdvf::io {

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Minimal netpbm header tokenizer: whitespace-separated tokens, '#' comments.
class HeaderReader {
 public:
  HeaderReader(const std::string& data, const std::filesystem::path& path) : data_(data), path_(path) {}

  std::string token() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < data_.size() && !std::isspace(static_cast<unsigned char>(data_[pos_]))) ++pos_;
    if (start == pos_) fail("truncated header");
    return data_.substr(start, pos_ - start);
  }

  int integer() {
    const std::string t = token();
    try {
      std::size_t used = 0;
      int value = std::stoi(t, &used);
      if (used != t.size()) fail("bad integer '" + t + "'");
      return value;
    } catch (const std::logic_error&) {
      fail("bad integer '" + t + "'");
    }
  }

  double real() {
    const std::string t = token();
    try {
      std::size_t used = 0;
      double value = std::stod(t, &used);
      if (used != t.size()) fail("bad number '" + t + "'");
      return value;
    } catch (const std::logic_error&) {
      fail("bad number '" + t + "'");
    }
  }

  // Exactly one whitespace byte separates the header from the raster.
  std::size_t raster_offset() {
    if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_]))) {
      fail("missing separator before raster");
    }
    return pos_ + 1;
  }

  [[noreturn]] void fail(const std::string& why) const { throw IoError(path_.string() + ": " + why); }

 private:
  void skip_space() {
    while (pos_ < data_.size()) {
      const char c = data_[pos_];
      if (c == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& data_;
  std::filesystem::path path_;
  std::size_t pos_ = 0;
};

double luma(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

void check_dims(HeaderReader& reader, int w, int h) {
  if (w < 1 || h < 1) reader.fail("invalid dimensions");
}

}  // namespace

ScalarField read_pgm(const std::filesystem::path& path) {
  const std::string data = slurp(path);
  HeaderReader reader(data, path);
  const std::string magic = reader.token();
  if (magic != "P5" && magic != "P6") reader.fail("not a binary PGM/PPM (magic '" + magic + "')");
  const int w = reader.integer();
  const int h = reader.integer();
  check_dims(reader, w, h);
  const int maxval = reader.integer();
  if (maxval != 255) reader.fail("only 8-bit images (maxval 255) are supported");
  const std::size_t offset = reader.raster_offset();
  const std::size_t channels = magic == "P6" ? 3 : 1;
  const std::size_t need = static_cast<std::size_t>(w) * h * channels;
  if (data.size() < offset + need) reader.fail("truncated raster");

  ScalarField image(w, h);
  const auto* px = reinterpret_cast<const unsigned char*>(data.data() + offset);
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (channels == 1) {
      image.data()[i] = px[i];
    } else {
      image.data()[i] = luma(px[3 * i], px[3 * i + 1], px[3 * i + 2]);
    }
  }
  return image;
}

void write_pgm(const std::filesystem::path& path, const ScalarField& image) {
  std::string out = "P5\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
  out.reserve(out.size() + image.size());
  for (double value : image.data()) {
    const double clamped = std::clamp(std::round(value), 0.0, 255.0);
    out.push_back(static_cast<char>(static_cast<unsigned char>(clamped)));
  }
  write_file_atomic(path, out);
}

BinaryMask read_mask(const std::filesystem::path& path) {
  const ScalarField image = read_pgm(path);
  BinaryMask mask(image.width(), image.height(), 0);
  for (std::size_t i = 0; i < image.size(); ++i) {
    mask.data()[i] = image.data()[i] >= 128.0 ? 1 : 0;
  }
  return mask;
}

void write_mask(const std::filesystem::path& path, const BinaryMask& mask) {
  ScalarField image(mask.width(), mask.height());
  for (std::size_t i = 0; i < mask.size(); ++i) image.data()[i] = mask.data()[i] ? 255.0 : 0.0;
  write_pgm(path, image);
}

ScalarField read_pfm(const std::filesystem::path& path) {
  const std::string data = slurp(path);
  HeaderReader reader(data, path);
  const std::string magic = reader.token();
  if (magic != "Pf" && magic != "PF") reader.fail("not a PFM file (magic '" + magic + "')");
  const int w = reader.integer();
  const int h = reader.integer();
  check_dims(reader, w, h);
  const double scale = reader.real();
  if (scale == 0.0) reader.fail("zero scale");
  const bool little = scale < 0.0;
  const std::size_t offset = reader.raster_offset();
  const std::size_t channels = magic == "PF" ? 3 : 1;
  const std::size_t need = static_cast<std::size_t>(w) * h * channels * sizeof(float);
  if (data.size() < offset + need) reader.fail("truncated raster");

  auto load = [&](std::size_t index) {
    std::uint32_t bits;
    std::memcpy(&bits, data.data() + offset + index * sizeof(float), sizeof bits);
    const bool native_little = std::endian::native == std::endian::little;
    if (little != native_little) bits = __builtin_bswap32(bits);
    return static_cast<double>(std::bit_cast<float>(bits));
  };

  ScalarField field(w, h);
  for (int row = 0; row < h; ++row) {
    const int v = h - 1 - row;  // bottom-to-top storage
    for (int u = 0; u < w; ++u) {
      const std::size_t i = static_cast<std::size_t>(row) * w + u;
      double value;
      if (channels == 1) {
        value = load(i);
      } else {
        value = luma(load(3 * i), load(3 * i + 1), load(3 * i + 2));
      }
      if (!std::isfinite(value)) reader.fail("non-finite value in raster");
      field(u, v) = value;
    }
  }
  return field;
}

void write_pfm(const std::filesystem::path& path, const ScalarField& field) {
  std::string out = "Pf\n" + std::to_string(field.width()) + " " + std::to_string(field.height()) + "\n-1.0\n";
  const std::size_t header = out.size();
  out.resize(header + field.size() * sizeof(float));
  std::size_t k = 0;
  for (int row = 0; row < field.height(); ++row) {
    const int v = field.height() - 1 - row;
    for (int u = 0; u < field.width(); ++u) {
      std::uint32_t bits = std::bit_cast<std::uint32_t>(static_cast<float>(field(u, v)));
      if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap32(bits);
      std::memcpy(out.data() + header + k * sizeof(float), &bits, sizeof bits);
      ++k;
    }
  }
  write_file_atomic(path, out);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

}  // namespace lcdvf::io
