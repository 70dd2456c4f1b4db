#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "sdcn/graph.hpp"
#include "sdcn/kmeans.hpp"
#include "sdcn/matrix.hpp"

namespace sdcn {

// On-disk layout of a dataset directory:
//   features.csv  required; one sample per row, no header
//   labels.txt    optional; one integer per line
//   graph.txt     optional; edge list, "i j" per line, '#' comments
struct DatasetBundle {
    std::string name;
    DenseMatrix features;
    std::optional<Partition> labels;
    std::optional<SparseGraph> graph;
};

DatasetBundle load_dataset(const std::filesystem::path& dir);
void save_dataset(const std::filesystem::path& dir, const DatasetBundle& bundle);

// CSV of doubles; '#' comments and blank lines are skipped. Ragged rows
// raise FormatError with the line number.
DenseMatrix load_csv(const std::filesystem::path& path);
void save_csv(const std::filesystem::path& path, const DenseMatrix& m);

Partition load_labels(const std::filesystem::path& path);
void save_labels(const std::filesystem::path& path, const Partition& labels);

}  // namespace sdcn
