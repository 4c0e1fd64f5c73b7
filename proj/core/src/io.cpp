#include "jsrbounds/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace jsr {

namespace {

using nlohmann::json;

std::string entry_path(std::size_t m, int i, int j) {
    return "matrices[" + std::to_string(m) + "][" + std::to_string(i) + "][" + std::to_string(j) +
           "]";
}

double parse_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ParseError(path + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ParseError(path + ": entry is not finite");
    return x;
}

Complex parse_entry(const json& v, const std::string& path) {
    if (v.is_number()) return Complex{parse_number(v, path), 0.0};
    if (v.is_array()) {
        if (v.size() != 2) {
            throw ParseError(path + ": complex entry must be a [re, im] pair, got " +
                             std::to_string(v.size()) + " elements");
        }
        return Complex{parse_number(v[0], path + "[0]"), parse_number(v[1], path + "[1]")};
    }
    throw ParseError(path + ": expected a number or a [re, im] pair");
}

}  // namespace

InputDocument parse_input(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ParseError("document: expected a JSON object");

    InputDocument doc;
    if (!root.contains("d")) throw ParseError("d: missing");
    if (!root["d"].is_number_integer()) throw ParseError("d: expected a positive integer");
    const long long d = root["d"].get<long long>();
    if (d < 1 || d > 4096) throw ParseError("d: must be in [1, 4096]");
    doc.d = static_cast<int>(d);

    if (!root.contains("matrices")) throw ParseError("matrices: missing");
    const json& mats = root["matrices"];
    if (!mats.is_array() || mats.empty()) throw ParseError("matrices: expected a nonempty array");

    for (std::size_t m = 0; m < mats.size(); ++m) {
        const json& grid = mats[m];
        const std::string mpath = "matrices[" + std::to_string(m) + "]";
        if (!grid.is_array() || grid.size() != static_cast<std::size_t>(doc.d)) {
            throw ParseError(mpath + ": expected " + std::to_string(doc.d) + " rows");
        }
        std::vector<Complex> entries;
        entries.reserve(static_cast<std::size_t>(doc.d) * doc.d);
        for (int i = 0; i < doc.d; ++i) {
            const json& row = grid[static_cast<std::size_t>(i)];
            if (!row.is_array() || row.size() != static_cast<std::size_t>(doc.d)) {
                throw ParseError(mpath + "[" + std::to_string(i) + "]: expected " +
                                 std::to_string(doc.d) + " entries");
            }
            for (int j = 0; j < doc.d; ++j) {
                entries.push_back(parse_entry(row[static_cast<std::size_t>(j)], entry_path(m, i, j)));
            }
        }
        doc.matrices.emplace_back(doc.d, std::move(entries));
    }

    if (root.contains("labels")) {
        const json& labels = root["labels"];
        if (!labels.is_array() || labels.size() != mats.size()) {
            throw ParseError("labels: expected one label per matrix");
        }
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (!labels[i].is_string()) {
                throw ParseError("labels[" + std::to_string(i) + "]: expected a string");
            }
            doc.labels.push_back(labels[i].get<std::string>());
        }
    }
    return doc;
}

InputDocument load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_input(buf.str());
}

std::string serialize_input(const InputDocument& doc) {
    json root;
    root["d"] = doc.d;
    json mats = json::array();
    for (const ComplexMatrix& m : doc.matrices) {
        json grid = json::array();
        for (int i = 0; i < doc.d; ++i) {
            json row = json::array();
            for (int j = 0; j < doc.d; ++j) {
                const Complex& z = m(i, j);
                if (z.imag() == 0.0) {
                    row.push_back(z.real());
                } else {
                    row.push_back(json::array({z.real(), z.imag()}));
                }
            }
            grid.push_back(std::move(row));
        }
        mats.push_back(std::move(grid));
    }
    root["matrices"] = std::move(mats);
    if (!doc.labels.empty()) root["labels"] = doc.labels;
    return root.dump(2);
}

MatrixSet to_matrix_set(const InputDocument& doc) { return MatrixSet(doc.matrices); }

}  // namespace jsr
