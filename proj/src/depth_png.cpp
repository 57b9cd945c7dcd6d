#include "fovex/depth_png.hpp"

#include <png.h>

#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <memory>

namespace fovex {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct PngWriter {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriter() { png_destroy_write_struct(&png, &info); }
};

void png_error_thrower(png_structp png, png_const_charp msg) {
  // libpng expects this handler not to return; unwind via the jmp buffer
  // installed by the caller.
  (void)msg;
  longjmp(png_jmpbuf(png), 1);
}

void open_reader(PngReader& r, std::FILE* f, const std::string& path) {
  png_byte header[8];
  if (std::fread(header, 1, 8, f) != 8 || png_sig_cmp(header, 0, 8))
    raise(Errc::bad_format, path + " is not a PNG file");
  r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_thrower, nullptr);
  r.info = png_create_info_struct(r.png);
  if (!r.png || !r.info) raise(Errc::io_error, "libpng allocation failed");
  png_init_io(r.png, f);
  png_set_sig_bytes(r.png, 8);
}

}  // namespace

DepthMap load_depth_png(const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "rb"));
  if (!f) raise(Errc::io_error, "cannot open " + path);

  PngReader r;
  open_reader(r, f.get(), path);
  if (setjmp(png_jmpbuf(r.png))) raise(Errc::bad_format, "libpng failed reading " + path);

  png_read_info(r.png, r.info);
  const int bit_depth = png_get_bit_depth(r.png, r.info);
  const int color_type = png_get_color_type(r.png, r.info);
  if (color_type != PNG_COLOR_TYPE_GRAY)
    raise(Errc::bad_format, path + ": depth PNG must be single-channel grayscale");
  if (bit_depth != 16)
    raise(Errc::bit_depth_mismatch,
          path + ": depth PNG must be 16-bit, got " + std::to_string(bit_depth));

  const int w = int(png_get_image_width(r.png, r.info));
  const int h = int(png_get_image_height(r.png, r.info));
  png_set_swap(r.png);  // PNG stores 16-bit big-endian
  png_read_update_info(r.png, r.info);

  std::vector<std::uint16_t> raw(size_t(w) * h);
  std::vector<png_bytep> rows(size_t(h));
  for (int y = 0; y < h; ++y) rows[size_t(y)] = reinterpret_cast<png_bytep>(&raw[size_t(y) * w]);
  png_read_image(r.png, rows.data());
  png_read_end(r.png, nullptr);

  std::vector<double> vals(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) vals[i] = raw[i] / 256.0;
  return DepthMap(w, h, std::move(vals));
}

namespace {

void write_png16(const std::vector<std::uint16_t>& raw, int w, int h, const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "wb"));
  if (!f) raise(Errc::io_error, "cannot write " + path);

  PngWriter wr;
  wr.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_thrower, nullptr);
  wr.info = png_create_info_struct(wr.png);
  if (!wr.png || !wr.info) raise(Errc::io_error, "libpng allocation failed");
  if (setjmp(png_jmpbuf(wr.png))) raise(Errc::io_error, "libpng failed writing " + path);

  png_init_io(wr.png, f.get());
  png_set_IHDR(wr.png, wr.info, png_uint_32(w), png_uint_32(h), 16, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(wr.png, wr.info);
  png_set_swap(wr.png);

  std::vector<png_bytep> rows(size_t(h));
  for (int y = 0; y < h; ++y)
    rows[size_t(y)] = reinterpret_cast<png_bytep>(const_cast<std::uint16_t*>(&raw[size_t(y) * w]));
  png_write_image(wr.png, rows.data());
  png_write_end(wr.png, nullptr);
}

std::vector<std::uint16_t> quantize256(const std::vector<double>& vals) {
  std::vector<std::uint16_t> raw(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) {
    const long long q = std::llround(vals[i] * 256.0);
    raw[i] = std::uint16_t(q < 0 ? 0 : (q > 65535 ? 65535 : q));
  }
  return raw;
}

}  // namespace

void save_depth_png(const DepthMap& d, const std::string& path) {
  write_png16(quantize256(d.values()), d.width(), d.height(), path);
}

void save_uncertainty_png(const UncertaintyMap& u, const std::string& path) {
  write_png16(quantize256(u.values()), u.width(), u.height(), path);
}

ImageFrame load_image_png(const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "rb"));
  if (!f) raise(Errc::io_error, "cannot open " + path);

  PngReader r;
  open_reader(r, f.get(), path);
  if (setjmp(png_jmpbuf(r.png))) raise(Errc::bad_format, "libpng failed reading " + path);

  png_read_info(r.png, r.info);
  if (png_get_bit_depth(r.png, r.info) != 8)
    raise(Errc::bit_depth_mismatch, path + ": image PNG must be 8-bit");
  // Normalize palette/gray/alpha variants to 8-bit RGB.
  png_set_palette_to_rgb(r.png);
  png_set_gray_to_rgb(r.png);
  png_set_strip_alpha(r.png);
  png_read_update_info(r.png, r.info);
  if (png_get_channels(r.png, r.info) != 3)
    raise(Errc::bad_format, path + ": expected an RGB image");

  const int w = int(png_get_image_width(r.png, r.info));
  const int h = int(png_get_image_height(r.png, r.info));
  std::vector<std::uint8_t> raw(size_t(w) * h * 3);
  std::vector<png_bytep> rows(size_t(h));
  for (int y = 0; y < h; ++y) rows[size_t(y)] = &raw[size_t(y) * w * 3];
  png_read_image(r.png, rows.data());
  png_read_end(r.png, nullptr);

  std::vector<double> vals(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) vals[i] = raw[i] / 255.0;
  return ImageFrame(w, h, std::move(vals));
}

void save_image_png(const ImageFrame& img, const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "wb"));
  if (!f) raise(Errc::io_error, "cannot write " + path);

  PngWriter wr;
  wr.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_thrower, nullptr);
  wr.info = png_create_info_struct(wr.png);
  if (!wr.png || !wr.info) raise(Errc::io_error, "libpng allocation failed");
  if (setjmp(png_jmpbuf(wr.png))) raise(Errc::io_error, "libpng failed writing " + path);

  const int w = img.width(), h = img.height();
  std::vector<std::uint8_t> raw(size_t(w) * h * 3);
  for (size_t i = 0; i < raw.size(); ++i)
    raw[i] = std::uint8_t(std::llround(img.values()[i] * 255.0));

  png_init_io(wr.png, f.get());
  png_set_IHDR(wr.png, wr.info, png_uint_32(w), png_uint_32(h), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(wr.png, wr.info);
  std::vector<png_bytep> rows(size_t(h));
  for (int y = 0; y < h; ++y) rows[size_t(y)] = &raw[size_t(y) * w * 3];
  png_write_image(wr.png, rows.data());
  png_write_end(wr.png, nullptr);
}

void save_gray8_png(const std::vector<std::uint8_t>& values, int width, int height,
                    const std::string& path) {
  if (values.size() != size_t(width) * height)
    raise(Errc::dimension_mismatch, "gray raster buffer does not match dimensions");
  FilePtr f(std::fopen(path.c_str(), "wb"));
  if (!f) raise(Errc::io_error, "cannot write " + path);

  PngWriter wr;
  wr.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_thrower, nullptr);
  wr.info = png_create_info_struct(wr.png);
  if (!wr.png || !wr.info) raise(Errc::io_error, "libpng allocation failed");
  if (setjmp(png_jmpbuf(wr.png))) raise(Errc::io_error, "libpng failed writing " + path);

  png_init_io(wr.png, f.get());
  png_set_IHDR(wr.png, wr.info, png_uint_32(width), png_uint_32(height), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(wr.png, wr.info);
  std::vector<png_bytep> rows(size_t(height));
  for (int y = 0; y < height; ++y)
    rows[size_t(y)] = const_cast<png_bytep>(&values[size_t(y) * width]);
  png_write_image(wr.png, rows.data());
  png_write_end(wr.png, nullptr);
}

}  // namespace fovex
