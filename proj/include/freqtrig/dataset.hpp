#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "freqtrig/image.hpp"

namespace freqtrig {

enum class DatasetFormat { Cifar10Binary, PngDir };

const char* to_string(DatasetFormat format);

/// Labelled RGB images, 8-bit at rest and held as doubles in memory.
struct Dataset {
    std::vector<Image> images;
    std::vector<int> labels;
    std::vector<std::string> class_names;
    DatasetFormat source_format = DatasetFormat::Cifar10Binary;

    std::size_t size() const noexcept { return images.size(); }
    std::size_t class_count() const;

    /// Indices of images carrying `label`, ascending.
    std::vector<std::size_t> indices_of(int label) const;

    /// Throws InvalidInput on label/image count mismatch, mixed dimensions
    /// or labels outside the class range.
    void validate() const;
};

/// The standard CIFAR-10 class names, in label order.
const std::vector<std::string>& cifar10_class_names();

inline constexpr std::size_t kCifarSide = 32;
inline constexpr std::size_t kCifarRecordBytes = 1 + 3 * kCifarSide * kCifarSide;

/// Parses one or more CIFAR-10 binary batch files, concatenated in the given
/// order. Each record is a label byte followed by R, G and B planes of
/// 1024 row-major bytes.
Dataset load_cifar10_binary(std::span<const std::filesystem::path> paths);
Dataset load_cifar10_binary(const std::filesystem::path& path);

/// `<root>/<class>/<image>.png`, classes and files in lexicographic order.
/// Only 8-bit RGB PNGs are accepted.
Dataset load_png_dir(const std::filesystem::path& root);

/// Regular file: CIFAR-10 binary. Directory: PNG tree.
Dataset load_dataset(const std::filesystem::path& path);

/// Writes `ds` quantized to 8 bits. For PngDir, `path` is the root directory
/// and a `classes.json` sidecar with the ordered class names is written.
void save_dataset(const Dataset& ds, const std::filesystem::path& path, DatasetFormat format);

std::vector<unsigned char> encode_cifar10_records(const Dataset& ds);

Image read_png(const std::filesystem::path& path);
void write_png(const Image& img, const std::filesystem::path& path);

}  // namespace freqtrig
