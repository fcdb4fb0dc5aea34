#include "lesionseg/image_io.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>

#include <jpeglib.h>
#include <png.h>

#include "lesionseg/errors.hpp"

namespace lesionseg {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_read(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw IoError(IoError::Kind::Unreadable, "cannot open file for reading: " + path);
    return f;
}

FilePtr open_write(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw IoError(IoError::Kind::Unwritable, "cannot open file for writing: " + path);
    return f;
}

std::string lower_ext(const std::string& path) {
    auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext;
}

// ---- PNG ----

struct PngReadCtx {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReadCtx() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    }
};

RgbImage load_png(std::FILE* f, const std::string& path) {
    PngReadCtx ctx;
    ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!ctx.png) throw Error("libpng init failed");
    ctx.info = png_create_info_struct(ctx.png);
    if (!ctx.info) throw Error("libpng init failed");

    RgbImage out;
    std::vector<png_bytep> row_ptrs;
    if (setjmp(png_jmpbuf(ctx.png))) {
        throw IoError(IoError::Kind::Corrupt, "corrupt PNG: " + path);
    }
    png_init_io(ctx.png, f);
    png_read_info(ctx.png, ctx.info);

    png_uint_32 w = png_get_image_width(ctx.png, ctx.info);
    png_uint_32 h = png_get_image_height(ctx.png, ctx.info);
    int bit_depth = png_get_bit_depth(ctx.png, ctx.info);
    int color_type = png_get_color_type(ctx.png, ctx.info);
    if (w < 1 || h < 1) throw IoError(IoError::Kind::Corrupt, "corrupt PNG: " + path);

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(ctx.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(ctx.png);
    if (png_get_valid(ctx.png, ctx.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(ctx.png);
    if (bit_depth == 16) png_set_strip_16(ctx.png);
    png_set_strip_alpha(ctx.png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(ctx.png);
    png_set_interlace_handling(ctx.png);
    png_read_update_info(ctx.png, ctx.info);

    out = RgbImage(static_cast<int>(w), static_cast<int>(h));
    row_ptrs.resize(h);
    for (png_uint_32 y = 0; y < h; ++y) row_ptrs[y] = out.data.data() + std::size_t(y) * w * 3;
    png_read_image(ctx.png, row_ptrs.data());
    png_read_end(ctx.png, nullptr);
    return out;
}

struct PngWriteCtx {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriteCtx() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    }
};

void write_png(std::FILE* f, const std::string& path, int w, int h, int channels,
               const std::uint8_t* data) {
    PngWriteCtx ctx;
    ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!ctx.png) throw Error("libpng init failed");
    ctx.info = png_create_info_struct(ctx.png);
    if (!ctx.info) throw Error("libpng init failed");

    std::vector<png_const_bytep> row_ptrs(h);
    if (setjmp(png_jmpbuf(ctx.png))) {
        throw IoError(IoError::Kind::Unwritable, "PNG write failed: " + path);
    }
    png_init_io(ctx.png, f);
    png_set_IHDR(ctx.png, ctx.info, w, h, 8,
                 channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(ctx.png, ctx.info);
    for (int y = 0; y < h; ++y) row_ptrs[y] = data + std::size_t(y) * w * channels;
    png_write_image(ctx.png, const_cast<png_bytepp>(row_ptrs.data()));
    png_write_end(ctx.png, nullptr);
}

// ---- JPEG ----

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jmp;
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    std::longjmp(err->jmp, 1);
}

RgbImage load_jpeg(std::FILE* f, const std::string& path) {
    jpeg_decompress_struct cinfo;
    JpegErrorMgr jerr;
    cinfo.err = jpeg_std_error(&jerr.pub);
    jerr.pub.error_exit = jpeg_error_exit;
    if (setjmp(jerr.jmp)) {
        jpeg_destroy_decompress(&cinfo);
        throw IoError(IoError::Kind::Corrupt, "corrupt JPEG: " + path);
    }
    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, f);
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    RgbImage out(static_cast<int>(cinfo.output_width), static_cast<int>(cinfo.output_height));
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = out.data.data() + std::size_t(cinfo.output_scanline) * out.width * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return out;
}

// ---- PNM (binary P5/P6, maxval 255) ----

int pnm_next_token(std::FILE* f, char* buf, int buflen) {
    int c;
    do {
        c = std::fgetc(f);
        if (c == '#') {
            while (c != EOF && c != '\n') c = std::fgetc(f);
        }
    } while (c != EOF && std::isspace(c));
    if (c == EOF) return 0;
    int n = 0;
    while (c != EOF && !std::isspace(c) && c != '#') {
        if (n < buflen - 1) buf[n++] = static_cast<char>(c);
        c = std::fgetc(f);
    }
    if (c == '#') ungetc(c, f);
    buf[n] = '\0';
    return n;
}

long pnm_read_int(std::FILE* f, const std::string& path) {
    char buf[32];
    if (!pnm_next_token(f, buf, sizeof buf))
        throw IoError(IoError::Kind::Corrupt, "truncated PNM header: " + path);
    char* end = nullptr;
    long v = std::strtol(buf, &end, 10);
    if (end == buf || *end != '\0' || v < 0)
        throw IoError(IoError::Kind::Corrupt, "bad PNM header field: " + path);
    return v;
}

RgbImage load_pnm(std::FILE* f, const std::string& path, bool color) {
    // magic already consumed by the caller's sniff; rewind past it
    std::fseek(f, 2, SEEK_SET);
    long w = pnm_read_int(f, path);
    long h = pnm_read_int(f, path);
    long maxval = pnm_read_int(f, path);
    if (w < 1 || h < 1) throw IoError(IoError::Kind::Corrupt, "bad PNM dimensions: " + path);
    if (maxval != 255)
        throw IoError(IoError::Kind::UnsupportedFormat,
                      "PNM maxval " + std::to_string(maxval) + " not supported (expect 255): " + path);
    // exactly one whitespace byte separates header and raster; fgetc in
    // pnm_read_int already consumed it while scanning past the token
    const std::size_t n = std::size_t(w) * std::size_t(h);
    RgbImage out(static_cast<int>(w), static_cast<int>(h));
    if (color) {
        if (std::fread(out.data.data(), 1, n * 3, f) != n * 3)
            throw IoError(IoError::Kind::Corrupt, "truncated PPM raster: " + path);
    } else {
        std::vector<std::uint8_t> plane(n);
        if (std::fread(plane.data(), 1, n, f) != n)
            throw IoError(IoError::Kind::Corrupt, "truncated PGM raster: " + path);
        for (std::size_t i = 0; i < n; ++i) {
            std::uint8_t* p = out.data.data() + i * 3;
            p[0] = p[1] = p[2] = plane[i];
        }
    }
    return out;
}

void write_pnm(std::FILE* f, const std::string& path, int w, int h, int channels,
               const std::uint8_t* data) {
    std::fprintf(f, "P%c\n%d %d\n255\n", channels == 3 ? '6' : '5', w, h);
    const std::size_t n = std::size_t(w) * h * channels;
    if (std::fwrite(data, 1, n, f) != n)
        throw IoError(IoError::Kind::Unwritable, "short write: " + path);
}

}  // namespace

RgbImage load_image(const std::string& path) {
    FilePtr f = open_read(path);
    unsigned char magic[8] = {0};
    std::size_t got = std::fread(magic, 1, sizeof magic, f.get());
    std::fseek(f.get(), 0, SEEK_SET);
    if (got >= 8 && png_sig_cmp(magic, 0, 8) == 0) return load_png(f.get(), path);
    if (got >= 2 && magic[0] == 'P' && (magic[1] == '5' || magic[1] == '6'))
        return load_pnm(f.get(), path, magic[1] == '6');
    if (got >= 2 && magic[0] == 0xFF && magic[1] == 0xD8) return load_jpeg(f.get(), path);
    throw IoError(IoError::Kind::UnsupportedFormat, "unsupported image format: " + path);
}

void save_mask(const BinaryMask& mask, const std::string& path) {
    std::vector<std::uint8_t> plane(mask.pixel_count());
    for (std::size_t i = 0; i < plane.size(); ++i) plane[i] = mask.data[i] ? 255 : 0;
    const std::string ext = lower_ext(path);
    FilePtr f = open_write(path);
    if (ext == "png")
        write_png(f.get(), path, mask.width, mask.height, 1, plane.data());
    else if (ext == "pgm")
        write_pnm(f.get(), path, mask.width, mask.height, 1, plane.data());
    else
        throw IoError(IoError::Kind::UnsupportedFormat, "unsupported mask format (.png/.pgm): " + path);
}

BinaryMask load_mask(const std::string& path) {
    RgbImage img = load_image(path);
    BinaryMask m(img.width, img.height);
    for (std::size_t i = 0; i < m.pixel_count(); ++i)
        m.data[i] = img.data[i * 3] > 127 ? 1 : 0;
    return m;
}

void save_rgb(const RgbImage& img, const std::string& path) {
    const std::string ext = lower_ext(path);
    FilePtr f = open_write(path);
    if (ext == "png")
        write_png(f.get(), path, img.width, img.height, 3, img.data.data());
    else if (ext == "ppm")
        write_pnm(f.get(), path, img.width, img.height, 3, img.data.data());
    else
        throw IoError(IoError::Kind::UnsupportedFormat, "unsupported color format (.png/.ppm): " + path);
}

void save_gray(const GrayImage& img, const std::string& path) {
    const std::string ext = lower_ext(path);
    FilePtr f = open_write(path);
    if (ext == "png")
        write_png(f.get(), path, img.width, img.height, 1, img.data.data());
    else if (ext == "pgm")
        write_pnm(f.get(), path, img.width, img.height, 1, img.data.data());
    else
        throw IoError(IoError::Kind::UnsupportedFormat, "unsupported gray format (.png/.pgm): " + path);
}

}  // namespace lesionseg
