#include "soficdim/digraph.hpp"

#include "soficdim/errors.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace soficdim {

double AlphabetSpec::exponent(int i) const {
    return std::log(static_cast<double>(m[i - 1])) /
           std::log(static_cast<double>(m[i]));
}

namespace {

// Shared tokenizer for both text formats: '#' starts a comment, blank lines
// are skipped, every remaining line is a whitespace-separated token list.
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

int parse_int(const Line& line, const std::string& tok) {
    size_t pos = 0;
    int value;
    try {
        value = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line.number, "expected integer, got '" + tok + "'");
    }
    if (pos != tok.size())
        throw ParseError(line.number, "expected integer, got '" + tok + "'");
    return value;
}

void check_arity(const Line& line, size_t want) {
    if (line.tokens.size() != want)
        throw ParseError(line.number,
                         "'" + line.tokens[0] + "' takes " +
                             std::to_string(want - 1) + " value(s), got " +
                             std::to_string(line.tokens.size() - 1));
}

}  // namespace

// Header lines shared by the graph and matrix formats. Returns the index of
// the first body line.
static size_t parse_header(const std::vector<Line>& lines, AlphabetSpec& ab) {
    bool have_dim = false, have_m = false;
    size_t i = 0;
    for (; i < lines.size(); ++i) {
        const Line& line = lines[i];
        const std::string& kw = line.tokens[0];
        if (kw == "dim") {
            if (have_dim) throw ParseError(line.number, "duplicate 'dim'");
            check_arity(line, 2);
            ab.dim = parse_int(line, line.tokens[1]);
            if (ab.dim != 2 && ab.dim != 3)
                throw ParseError(line.number, "dim must be 2 or 3");
            have_dim = true;
        } else if (kw == "m") {
            if (have_m) throw ParseError(line.number, "duplicate 'm'");
            if (!have_dim)
                throw ParseError(line.number, "'m' must come after 'dim'");
            check_arity(line, static_cast<size_t>(ab.dim) + 1);
            for (int k = 0; k < ab.dim; ++k) {
                ab.m[static_cast<size_t>(k)] =
                    parse_int(line, line.tokens[static_cast<size_t>(k) + 1]);
                if (ab.m[static_cast<size_t>(k)] < 2)
                    throw ParseError(line.number, "each m_i must be >= 2");
            }
            for (int k = 1; k < ab.dim; ++k)
                if (ab.m[static_cast<size_t>(k - 1)] > ab.m[static_cast<size_t>(k)])
                    throw ParseError(line.number,
                                     "m must be non-decreasing");
            have_m = true;
        } else {
            break;
        }
    }
    if (!have_dim || !have_m) {
        const int at = lines.empty() ? 1 : lines[i == 0 ? 0 : i - 1].number;
        throw ParseError(at, "missing 'dim'/'m' header");
    }
    return i;
}

LabeledDigraph parse_digraph(std::istream& in) {
    const std::vector<Line> lines = tokenize(in);
    if (lines.empty()) throw ParseError(1, "empty input");

    LabeledDigraph g;
    size_t i = parse_header(lines, g.alphabet);

    bool have_vertices = false;
    for (; i < lines.size(); ++i) {
        const Line& line = lines[i];
        const std::string& kw = line.tokens[0];
        if (kw == "vertices") {
            if (have_vertices)
                throw ParseError(line.number, "duplicate 'vertices'");
            check_arity(line, 2);
            g.vertex_count = parse_int(line, line.tokens[1]);
            if (g.vertex_count < 1)
                throw ParseError(line.number, "vertices must be >= 1");
            have_vertices = true;
        } else if (kw == "edge") {
            if (!have_vertices)
                throw ParseError(line.number,
                                 "'edge' before 'vertices' line");
            check_arity(line, static_cast<size_t>(g.alphabet.dim) + 3);
            LabeledEdge e;
            e.from = parse_int(line, line.tokens[1]);
            e.to = parse_int(line, line.tokens[2]);
            if (e.from < 0 || e.from >= g.vertex_count || e.to < 0 ||
                e.to >= g.vertex_count)
                throw ParseError(line.number, "edge endpoint out of range");
            for (int k = 0; k < g.alphabet.dim; ++k) {
                const int sym =
                    parse_int(line, line.tokens[static_cast<size_t>(k) + 3]);
                if (sym < 0 || sym >= g.alphabet.m[static_cast<size_t>(k)])
                    throw ParseError(line.number,
                                     "label symbol " + std::to_string(sym) +
                                         " out of range for coordinate " +
                                         std::to_string(k + 1));
                e.label[static_cast<size_t>(k)] = sym;
            }
            g.edges.push_back(e);
        } else {
            throw ParseError(line.number, "unknown keyword '" + kw + "'");
        }
    }
    if (!have_vertices)
        throw ParseError(lines.back().number, "missing 'vertices' line");
    return g;
}

LabeledDigraph parse_digraph(const std::string& text) {
    std::istringstream in(text);
    return parse_digraph(in);
}

std::string serialize_digraph(const LabeledDigraph& g) {
    std::ostringstream os;
    os << "dim " << g.alphabet.dim << "\n";
    os << "m";
    for (int k = 0; k < g.alphabet.dim; ++k)
        os << " " << g.alphabet.m[static_cast<size_t>(k)];
    os << "\n";
    os << "vertices " << g.vertex_count << "\n";
    for (const LabeledEdge& e : g.edges) {
        os << "edge " << e.from << " " << e.to;
        for (int k = 0; k < g.alphabet.dim; ++k)
            os << " " << e.label[static_cast<size_t>(k)];
        os << "\n";
    }
    return os.str();
}

std::vector<ResolvingViolation> validate_right_resolving(
    const LabeledDigraph& g) {
    std::map<std::pair<int, std::array<int, 3>>, int> seen;
    for (const LabeledEdge& e : g.edges) ++seen[{e.from, e.label}];
    std::vector<ResolvingViolation> out;
    for (const auto& [key, count] : seen)
        if (count > 1) out.push_back({key.first, key.second, count});
    return out;
}

std::string label_to_string(const std::array<int, 3>& label, int dim) {
    std::ostringstream os;
    os << "(";
    for (int k = 0; k < dim; ++k)
        os << (k ? "," : "") << label[static_cast<size_t>(k)];
    os << ")";
    return os.str();
}

}  // namespace soficdim
