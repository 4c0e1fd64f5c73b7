#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "jsrbounds/semigroup.hpp"

// Matrix-set input documents. The on-disk format is a single JSON object:
//
//   { "d": 2,
//     "matrices": [ [[2, 0], [0, 1]],
//                   [[[0, 1], [0, 0]], [[0, 0], [0, 0]]] ],
//     "labels": ["A", "B"] }
//
// Each matrix is a d x d grid; an entry is either a real number or a
// two-element [re, im] array. "labels" is optional.

namespace jsr {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct InputDocument {
    int d = 0;
    std::vector<ComplexMatrix> matrices;
    std::vector<std::string> labels;  // empty, or one per matrix

    bool operator==(const InputDocument& other) const = default;
};

/// Parse a JSON document. Throws ParseError naming the offending field.
InputDocument parse_input(const std::string& json_text);

/// Read and parse a file. Throws ParseError (missing file included).
InputDocument load_input(const std::string& path);

/// Canonical JSON serialization; parse(serialize(doc)) == doc.
/// Entries with zero imaginary part serialize as plain numbers.
std::string serialize_input(const InputDocument& doc);

MatrixSet to_matrix_set(const InputDocument& doc);

}  // namespace jsr
