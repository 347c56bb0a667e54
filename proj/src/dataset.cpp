#include "freqtrig/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>

#include <json.hpp>
#include <png.h>

#include "freqtrig/error.hpp"
#include "freqtrig/parallel.hpp"

namespace fs = std::filesystem;

namespace freqtrig {

const char* to_string(DatasetFormat format) {
    return format == DatasetFormat::Cifar10Binary ? "cifar10" : "png";
}

std::size_t Dataset::class_count() const {
    int max_label = -1;
    for (int l : labels) max_label = std::max(max_label, l);
    return std::max(class_names.size(), static_cast<std::size_t>(max_label + 1));
}

std::vector<std::size_t> Dataset::indices_of(int label) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) out.push_back(i);
    }
    return out;
}

void Dataset::validate() const {
    if (images.size() != labels.size()) throw InvalidInput("dataset image/label count mismatch");
    // Named classes bound the labels; without names any non-negative label goes.
    const std::size_t classes = class_names.empty() ? class_count() : class_names.size();
    for (int l : labels) {
        if (l < 0 || static_cast<std::size_t>(l) >= classes) throw InvalidInput("dataset label out of range");
    }
    for (const auto& img : images) {
        if (!img.same_shape(images.front()) || img.color_space() != ColorSpace::RGB) {
            throw InvalidInput("dataset images must be RGB and share dimensions");
        }
    }
}

const std::vector<std::string>& cifar10_class_names() {
    static const std::vector<std::string> names = {"airplane", "automobile", "bird",  "cat",  "deer",
                                                   "dog",      "frog",       "horse", "ship", "truck"};
    return names;
}

namespace {

std::vector<unsigned char> read_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const fs::path& path, const std::vector<unsigned char>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing " + path.string());
}

unsigned char to_byte(double x) {
    return static_cast<unsigned char>(std::lround(std::clamp(x, 0.0, 255.0)));
}

void parse_cifar_records(const std::vector<unsigned char>& bytes, const fs::path& path, Dataset& ds) {
    if (bytes.size() % kCifarRecordBytes != 0) {
        const std::uint64_t complete = bytes.size() / kCifarRecordBytes * kCifarRecordBytes;
        throw ParseError(path.string() + ": size " + std::to_string(bytes.size()) +
                             " is not a multiple of the " + std::to_string(kCifarRecordBytes) +
                             "-byte record; trailing partial record",
                         complete);
    }
    constexpr std::size_t plane = kCifarSide * kCifarSide;
    for (std::size_t off = 0; off < bytes.size(); off += kCifarRecordBytes) {
        const unsigned char label = bytes[off];
        if (label > 9) {
            throw ParseError(path.string() + ": label byte " + std::to_string(label) + " > 9", off);
        }
        Image img(kCifarSide, kCifarSide, 3, ColorSpace::RGB);
        for (std::size_t ch = 0; ch < 3; ++ch) {
            auto values = img.plane(ch).values();
            const unsigned char* src = bytes.data() + off + 1 + ch * plane;
            for (std::size_t k = 0; k < plane; ++k) values[k] = src[k];
        }
        ds.images.push_back(std::move(img));
        ds.labels.push_back(label);
    }
}

struct PngReadGuard {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReadGuard() { png_destroy_read_struct(&png, info ? &info : nullptr, nullptr); }
};

struct PngWriteGuard {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriteGuard() { png_destroy_write_struct(&png, info ? &info : nullptr); }
};

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};

}  // namespace

Dataset load_cifar10_binary(std::span<const fs::path> paths) {
    if (paths.empty()) throw InvalidArgument("no CIFAR-10 batch files given");
    Dataset ds;
    ds.source_format = DatasetFormat::Cifar10Binary;
    ds.class_names = cifar10_class_names();
    for (const auto& p : paths) parse_cifar_records(read_bytes(p), p, ds);
    return ds;
}

Dataset load_cifar10_binary(const fs::path& path) {
    return load_cifar10_binary(std::span<const fs::path>(&path, 1));
}

std::vector<unsigned char> encode_cifar10_records(const Dataset& ds) {
    ds.validate();
    std::vector<unsigned char> bytes;
    bytes.reserve(ds.size() * kCifarRecordBytes);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const Image& img = ds.images[i];
        if (img.width() != kCifarSide || img.height() != kCifarSide || img.channels() != 3) {
            throw InvalidInput("CIFAR-10 records hold 32x32x3 images only");
        }
        if (ds.labels[i] > 9) throw InvalidInput("CIFAR-10 labels must be 0..9");
        bytes.push_back(static_cast<unsigned char>(ds.labels[i]));
        for (std::size_t ch = 0; ch < 3; ++ch) {
            for (double x : img.plane(ch).values()) bytes.push_back(to_byte(x));
        }
    }
    return bytes;
}

Image read_png(const fs::path& path) {
    std::unique_ptr<std::FILE, FileCloser> file(std::fopen(path.c_str(), "rb"));
    if (!file) throw IoError("cannot open " + path.string());
    unsigned char sig[8];
    if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
        throw ParseError(path.string() + ": not a PNG file", 0);
    }
    PngReadGuard g;
    g.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!g.png) throw IoError("libpng init failed");
    g.info = png_create_info_struct(g.png);
    if (!g.info) throw IoError("libpng init failed");
    // Declared before setjmp so a libpng longjmp never skips their destructors.
    std::vector<unsigned char> buf;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(g.png))) throw ParseError(path.string() + ": corrupt PNG", 0);

    png_init_io(g.png, file.get());
    png_set_sig_bytes(g.png, 8);
    png_read_info(g.png, g.info);
    const auto width = png_get_image_width(g.png, g.info);
    const auto height = png_get_image_height(g.png, g.info);
    const int color = png_get_color_type(g.png, g.info);
    const int depth = png_get_bit_depth(g.png, g.info);
    if (color != PNG_COLOR_TYPE_RGB || depth != 8) {
        throw InvalidInput(path.string() + ": only 8-bit RGB PNGs are supported");
    }
    const std::size_t stride = png_get_rowbytes(g.png, g.info);
    buf.resize(stride * height);
    rows.resize(height);
    for (std::size_t r = 0; r < height; ++r) rows[r] = buf.data() + r * stride;
    png_read_image(g.png, rows.data());
    png_read_end(g.png, nullptr);

    Image img(width, height, 3, ColorSpace::RGB);
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            for (std::size_t ch = 0; ch < 3; ++ch) img.at(ch, r, c) = rows[r][c * 3 + ch];
        }
    }
    return img;
}

void write_png(const Image& img, const fs::path& path) {
    if (img.color_space() != ColorSpace::RGB || img.channels() != 3) {
        throw InvalidInput("write_png: expected a 3-channel RGB image");
    }
    std::vector<unsigned char> buf(img.width() * img.height() * 3);
    for (std::size_t r = 0; r < img.height(); ++r)
        for (std::size_t c = 0; c < img.width(); ++c)
            for (std::size_t ch = 0; ch < 3; ++ch) buf[(r * img.width() + c) * 3 + ch] = to_byte(img.at(ch, r, c));

    std::unique_ptr<std::FILE, FileCloser> file(std::fopen(path.c_str(), "wb"));
    if (!file) throw IoError("cannot open " + path.string() + " for writing");
    PngWriteGuard g;
    g.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!g.png) throw IoError("libpng init failed");
    g.info = png_create_info_struct(g.png);
    if (!g.info) throw IoError("libpng init failed");
    if (setjmp(png_jmpbuf(g.png))) throw IoError(path.string() + ": PNG encoding failed");

    png_init_io(g.png, file.get());
    png_set_IHDR(g.png, g.info, static_cast<png_uint_32>(img.width()), static_cast<png_uint_32>(img.height()), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(g.png, g.info);
    for (std::size_t r = 0; r < img.height(); ++r) png_write_row(g.png, buf.data() + r * img.width() * 3);
    png_write_end(g.png, nullptr);
}

Dataset load_png_dir(const fs::path& root) {
    if (!fs::is_directory(root)) throw IoError(root.string() + " is not a directory");
    std::vector<fs::path> class_dirs;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory()) class_dirs.push_back(entry.path());
    }
    if (class_dirs.empty()) throw InvalidInput(root.string() + ": no class directories");
    std::sort(class_dirs.begin(), class_dirs.end());

    Dataset ds;
    ds.source_format = DatasetFormat::PngDir;
    std::vector<fs::path> files;
    for (std::size_t label = 0; label < class_dirs.size(); ++label) {
        ds.class_names.push_back(class_dirs[label].filename().string());
        std::vector<fs::path> members;
        for (const auto& entry : fs::directory_iterator(class_dirs[label])) {
            if (entry.is_regular_file() && entry.path().extension() == ".png") members.push_back(entry.path());
        }
        std::sort(members.begin(), members.end());
        for (auto& m : members) {
            files.push_back(std::move(m));
            ds.labels.push_back(static_cast<int>(label));
        }
    }
    if (files.empty()) throw InvalidInput(root.string() + ": no PNG images");

    ds.images.resize(files.size());
    parallel_for(files.size(), [&](std::size_t i) { ds.images[i] = read_png(files[i]); });
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (!ds.images[i].same_shape(ds.images.front())) {
            throw InvalidInput(files[i].string() + ": dimensions differ from " + files.front().string());
        }
    }
    return ds;
}

Dataset load_dataset(const fs::path& path) {
    if (fs::is_directory(path)) return load_png_dir(path);
    if (!fs::exists(path)) throw IoError(path.string() + " does not exist");
    return load_cifar10_binary(path);
}

void save_dataset(const Dataset& ds, const fs::path& path, DatasetFormat format) {
    ds.validate();
    if (format == DatasetFormat::Cifar10Binary) {
        write_bytes(path, encode_cifar10_records(ds));
        return;
    }
    std::vector<std::string> names = ds.class_names;
    for (std::size_t k = names.size(); k < ds.class_count(); ++k) names.push_back("class_" + std::to_string(k));
    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec) throw IoError("cannot create " + path.string() + ": " + ec.message());
    for (const auto& name : names) {
        fs::create_directories(path / name, ec);
        if (ec) throw IoError("cannot create " + (path / name).string() + ": " + ec.message());
    }
    // Zero-padded global index keeps lexicographic order equal to dataset order
    // within each class.
    const std::size_t digits = std::max<std::size_t>(6, std::to_string(ds.size()).size());
    parallel_for(ds.size(), [&](std::size_t i) {
        std::string stem = std::to_string(i);
        stem.insert(0, digits - stem.size(), '0');
        write_png(ds.images[i], path / names[static_cast<std::size_t>(ds.labels[i])] / (stem + ".png"));
    });
    std::ofstream sidecar(path / "classes.json", std::ios::binary);
    if (!sidecar) throw IoError("cannot write classes.json in " + path.string());
    sidecar << nlohmann::json(names).dump() << '\n';
}

}  // namespace freqtrig
