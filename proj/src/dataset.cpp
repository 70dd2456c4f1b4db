#include "sdcn/dataset.hpp"

#include <fstream>
#include <sstream>

#include "sdcn/errors.hpp"

namespace sdcn {

DenseMatrix load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("load_csv: cannot open " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                while (used < cell.size() &&
                       (cell[used] == ' ' || cell[used] == '\t' || cell[used] == '\r'))
                    ++used;
                if (used != cell.size()) throw std::invalid_argument(cell);
                row.push_back(v);
            } catch (const std::exception&) {
                throw FormatError("load_csv: " + path.string() + ":" + std::to_string(line_no) +
                                  ": bad number '" + cell + "'");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw FormatError("load_csv: " + path.string() + ":" + std::to_string(line_no) +
                              ": expected " + std::to_string(rows.front().size()) +
                              " columns, got " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw FormatError("load_csv: " + path.string() + ": no data rows");
    DenseMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

void save_csv(const std::filesystem::path& path, const DenseMatrix& m) {
    std::ofstream out(path);
    if (!out) throw FormatError("save_csv: cannot open " + path.string());
    out.precision(17);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << m(i, j);
        }
        out << '\n';
    }
}

Partition load_labels(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("load_labels: cannot open " + path.string());
    Partition labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        long long v = 0;
        if (!(ss >> v)) continue;
        if (v < 0)
            throw FormatError("load_labels: " + path.string() + ":" + std::to_string(line_no) +
                              ": negative label");
        labels.push_back(static_cast<int>(v));
    }
    if (labels.empty()) throw FormatError("load_labels: " + path.string() + ": no labels");
    return labels;
}

void save_labels(const std::filesystem::path& path, const Partition& labels) {
    std::ofstream out(path);
    if (!out) throw FormatError("save_labels: cannot open " + path.string());
    for (int v : labels) out << v << '\n';
}

DatasetBundle load_dataset(const std::filesystem::path& dir) {
    DatasetBundle bundle;
    bundle.name = dir.filename().string();
    bundle.features = load_csv(dir / "features.csv");
    if (std::filesystem::exists(dir / "labels.txt")) {
        bundle.labels = load_labels(dir / "labels.txt");
        if (bundle.labels->size() != bundle.features.rows())
            throw FormatError("load_dataset: " + dir.string() + ": " +
                              std::to_string(bundle.labels->size()) + " labels for " +
                              std::to_string(bundle.features.rows()) + " samples");
    }
    if (std::filesystem::exists(dir / "graph.txt"))
        bundle.graph = load_edge_list(dir / "graph.txt", bundle.features.rows());
    return bundle;
}

void save_dataset(const std::filesystem::path& dir, const DatasetBundle& bundle) {
    std::filesystem::create_directories(dir);
    save_csv(dir / "features.csv", bundle.features);
    if (bundle.labels) save_labels(dir / "labels.txt", *bundle.labels);
    if (bundle.graph) save_edge_list(dir / "graph.txt", *bundle.graph);
}

}  // namespace sdcn
