#pragma once

// Right-resolving labeled digraphs over a box alphabet.
//
// The alphabet is I_1 x ... x I_d with I_i = {0, ..., m_i - 1} and
// m_1 <= ... <= m_d (d = 2 or 3). Matrices are indexed by the projection of
// a label to its first d-1 coordinates ("keys"), flattened in row-major
// order. A graph is right-resolving when no vertex carries two out-edges
// with the same full label.

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace soficdim {

struct AlphabetSpec {
    int dim = 2;               // ambient dimension d, 2 or 3
    std::array<int, 3> m{};    // m[0..dim-1]; unused slots zero

    int key_count() const {
        return dim == 2 ? m[0] : m[0] * m[1];
    }
    int full_count() const {
        int c = 1;
        for (int i = 0; i < dim; ++i) c *= m[i];
        return c;
    }

    // Flat key of a label's first d-1 coordinates.
    int key_index(const std::array<int, 3>& label) const {
        return dim == 2 ? label[0] : label[0] * m[1] + label[1];
    }
    // Inverse of key_index; returned array has the last coordinate zeroed.
    std::array<int, 3> key_symbols(int key) const {
        if (dim == 2) return {key, 0, 0};
        return {key / m[1], key % m[1], 0};
    }

    // exponent(i) = log_{m_{i+1}} m_i for i = 1 .. d-1. These are the powers
    // that weight successive levels of the nested limit sums.
    double exponent(int i) const;

    bool operator==(const AlphabetSpec& o) const = default;
};

struct LabeledEdge {
    int from = 0;
    int to = 0;
    std::array<int, 3> label{};  // label[0..dim-1]

    bool operator==(const LabeledEdge& o) const = default;
};

struct LabeledDigraph {
    AlphabetSpec alphabet;
    int vertex_count = 0;
    std::vector<LabeledEdge> edges;

    bool operator==(const LabeledDigraph& o) const = default;
};

LabeledDigraph parse_digraph(std::istream& in);
LabeledDigraph parse_digraph(const std::string& text);

// Canonical text form; parse(serialize(g)) == g.
std::string serialize_digraph(const LabeledDigraph& g);

struct ResolvingViolation {
    int vertex = 0;
    std::array<int, 3> label{};
    int count = 0;  // number of out-edges of `vertex` carrying `label`

    bool operator==(const ResolvingViolation& o) const = default;
};

// All (vertex, label) pairs carried by more than one out-edge, sorted by
// vertex then label. Empty means the graph is right-resolving.
std::vector<ResolvingViolation> validate_right_resolving(
    const LabeledDigraph& g);

std::string label_to_string(const std::array<int, 3>& label, int dim);

}  // namespace soficdim
