#include "soficdim/family.hpp"

#include "soficdim/errors.hpp"

#include <fstream>
#include <sstream>

namespace soficdim {

std::vector<int> AdjacencyFamily::nonzero_keys() const {
    std::vector<int> keys;
    for (int s = 0; s < static_cast<int>(by_key.size()); ++s)
        if (!by_key[static_cast<size_t>(s)].is_zero()) keys.push_back(s);
    return keys;
}

IntMatrix AdjacencyFamily::key_sum() const {
    IntMatrix sum(n);
    for (const IntMatrix& A : by_key) sum += A;
    return sum;
}

AdjacencyFamily build_adjacency_family(const LabeledDigraph& g) {
    AdjacencyFamily fam;
    fam.alphabet = g.alphabet;
    fam.n = g.vertex_count;
    fam.by_key.assign(static_cast<size_t>(g.alphabet.key_count()),
                      IntMatrix(g.vertex_count));
    for (const LabeledEdge& e : g.edges) {
        const int key = g.alphabet.key_index(e.label);
        fam.by_key[static_cast<size_t>(key)].at(e.from, e.to) += 1;
    }
    return fam;
}

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
    std::vector<Line> lines;
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::istringstream ls(raw);
        Line line{number, {}};
        std::string tok;
        while (ls >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

long long parse_ll(const Line& line, const std::string& tok) {
    size_t pos = 0;
    long long value;
    try {
        value = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line.number, "expected integer, got '" + tok + "'");
    }
    if (pos != tok.size())
        throw ParseError(line.number, "expected integer, got '" + tok + "'");
    return value;
}

int parse_i(const Line& line, const std::string& tok) {
    const long long v = parse_ll(line, tok);
    if (v < -(1LL << 30) || v > (1LL << 30))
        throw ParseError(line.number, "integer out of range: '" + tok + "'");
    return static_cast<int>(v);
}

}  // namespace

AdjacencyFamily parse_matrix_family(std::istream& in) {
    const std::vector<Line> lines = tokenize(in);
    if (lines.empty()) throw ParseError(1, "empty input");

    AdjacencyFamily fam;
    bool have_dim = false, have_m = false, have_n = false;
    std::vector<bool> block_seen;
    size_t i = 0;
    while (i < lines.size()) {
        const Line& line = lines[i];
        const std::string& kw = line.tokens[0];
        if (kw == "dim") {
            if (have_dim) throw ParseError(line.number, "duplicate 'dim'");
            if (line.tokens.size() != 2)
                throw ParseError(line.number, "'dim' takes one value");
            fam.alphabet.dim = parse_i(line, line.tokens[1]);
            if (fam.alphabet.dim != 2 && fam.alphabet.dim != 3)
                throw ParseError(line.number, "dim must be 2 or 3");
            have_dim = true;
            ++i;
        } else if (kw == "m") {
            if (have_m) throw ParseError(line.number, "duplicate 'm'");
            if (!have_dim)
                throw ParseError(line.number, "'m' must come after 'dim'");
            if (line.tokens.size() != static_cast<size_t>(fam.alphabet.dim) + 1)
                throw ParseError(line.number, "'m' arity does not match dim");
            for (int k = 0; k < fam.alphabet.dim; ++k) {
                fam.alphabet.m[static_cast<size_t>(k)] =
                    parse_i(line, line.tokens[static_cast<size_t>(k) + 1]);
                if (fam.alphabet.m[static_cast<size_t>(k)] < 2)
                    throw ParseError(line.number, "each m_i must be >= 2");
            }
            for (int k = 1; k < fam.alphabet.dim; ++k)
                if (fam.alphabet.m[static_cast<size_t>(k - 1)] >
                    fam.alphabet.m[static_cast<size_t>(k)])
                    throw ParseError(line.number, "m must be non-decreasing");
            have_m = true;
            ++i;
        } else if (kw == "n") {
            if (have_n) throw ParseError(line.number, "duplicate 'n'");
            if (line.tokens.size() != 2)
                throw ParseError(line.number, "'n' takes one value");
            fam.n = parse_i(line, line.tokens[1]);
            if (fam.n < 1) throw ParseError(line.number, "n must be >= 1");
            have_n = true;
            ++i;
        } else if (kw == "matrix") {
            if (!have_m || !have_n)
                throw ParseError(line.number,
                                 "'matrix' before dim/m/n header");
            if (block_seen.empty()) {
                fam.by_key.assign(
                    static_cast<size_t>(fam.alphabet.key_count()),
                    IntMatrix(fam.n));
                block_seen.assign(fam.by_key.size(), false);
            }
            if (line.tokens.size() != static_cast<size_t>(fam.alphabet.dim))
                throw ParseError(line.number,
                                 "'matrix' takes the first " +
                                     std::to_string(fam.alphabet.dim - 1) +
                                     " label coordinate(s)");
            std::array<int, 3> proj{};
            for (int k = 0; k + 1 < fam.alphabet.dim; ++k) {
                proj[static_cast<size_t>(k)] =
                    parse_i(line, line.tokens[static_cast<size_t>(k) + 1]);
                if (proj[static_cast<size_t>(k)] < 0 ||
                    proj[static_cast<size_t>(k)] >=
                        fam.alphabet.m[static_cast<size_t>(k)])
                    throw ParseError(line.number, "key symbol out of range");
            }
            const int key = fam.alphabet.key_index(proj);
            if (block_seen[static_cast<size_t>(key)])
                throw ParseError(line.number, "duplicate matrix block");
            block_seen[static_cast<size_t>(key)] = true;
            for (int r = 0; r < fam.n; ++r) {
                if (i + 1 + static_cast<size_t>(r) >= lines.size())
                    throw ParseError(line.number, "matrix block truncated");
                const Line& row = lines[i + 1 + static_cast<size_t>(r)];
                if (row.tokens.size() != static_cast<size_t>(fam.n))
                    throw ParseError(row.number,
                                     "matrix row needs " +
                                         std::to_string(fam.n) + " entries");
                for (int c = 0; c < fam.n; ++c) {
                    const long long v = parse_ll(row, row.tokens[static_cast<size_t>(c)]);
                    if (v < 0)
                        throw ParseError(row.number,
                                         "matrix entries must be >= 0");
                    fam.by_key[static_cast<size_t>(key)].at(r, c) = v;
                }
            }
            i += 1 + static_cast<size_t>(fam.n);
        } else {
            throw ParseError(line.number, "unknown keyword '" + kw + "'");
        }
    }
    if (!have_dim || !have_m || !have_n)
        throw ParseError(lines.back().number, "missing dim/m/n header");
    if (fam.by_key.empty())
        fam.by_key.assign(static_cast<size_t>(fam.alphabet.key_count()),
                          IntMatrix(fam.n));
    return fam;
}

AdjacencyFamily parse_matrix_family(const std::string& text) {
    std::istringstream in(text);
    return parse_matrix_family(in);
}

std::string serialize_matrix_family(const AdjacencyFamily& fam) {
    std::ostringstream os;
    os << "dim " << fam.alphabet.dim << "\n";
    os << "m";
    for (int k = 0; k < fam.alphabet.dim; ++k)
        os << " " << fam.alphabet.m[static_cast<size_t>(k)];
    os << "\nn " << fam.n << "\n";
    for (int key : fam.nonzero_keys()) {
        const auto proj = fam.alphabet.key_symbols(key);
        os << "matrix";
        for (int k = 0; k + 1 < fam.alphabet.dim; ++k)
            os << " " << proj[static_cast<size_t>(k)];
        os << "\n";
        for (int r = 0; r < fam.n; ++r) {
            for (int c = 0; c < fam.n; ++c)
                os << (c ? " " : "") << fam.matrix(key).at(r, c);
            os << "\n";
        }
    }
    return os.str();
}

LoadedFamily load_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    // Decide the format by which body keyword appears first.
    std::istringstream scan(text);
    bool graph_form = false, matrix_form = false;
    {
        std::string raw;
        while (std::getline(scan, raw) && !graph_form && !matrix_form) {
            if (auto hash = raw.find('#'); hash != std::string::npos)
                raw.erase(hash);
            std::istringstream ls(raw);
            std::string kw;
            if (!(ls >> kw)) continue;
            if (kw == "vertices" || kw == "edge") graph_form = true;
            if (kw == "n" || kw == "matrix") matrix_form = true;
        }
    }
    LoadedFamily out;
    if (graph_form) {
        out.graph = parse_digraph(text);
        out.family = build_adjacency_family(out.graph);
        out.from_graph = true;
    } else if (matrix_form) {
        out.family = parse_matrix_family(text);
    } else {
        throw ParseError(1, "neither a graph nor a matrix family: '" + path +
                                "'");
    }
    return out;
}

}  // namespace soficdim
