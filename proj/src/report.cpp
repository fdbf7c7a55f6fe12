#include "soficdim/report.hpp"

#include "soficdim/errors.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace soficdim {

namespace {

using nlohmann::ordered_json;

std::string word_display(const TreeWord& w) {
    bool wide = false;
    for (unsigned char c : w) {
        if (c > 9) wide = true;
    }
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (wide && i > 0) out += '.';
        out += std::to_string(static_cast<int>(static_cast<unsigned char>(w[i])));
    }
    return out;
}

ordered_json keystring_json(const KeyString& s) {
    ordered_json arr = ordered_json::array();
    for (int sym : s) arr.push_back(sym);
    return arr;
}

ordered_json direction_json(const RowDirection& v) {
    ordered_json arr = ordered_json::array();
    for (const BigInt& x : v.v) arr.push_back(x.convert_to<long long>());
    return arr;
}

ordered_json series_json(const CoefficientSeries& s) {
    ordered_json j;
    j["L"] = s.L;
    j["alpha"] = s.alpha;
    j["K"] = s.K();
    j["coefficients"] = s.c;
    if (s.growth_estimate > 0.0) j["growth"] = s.growth_estimate;
    return j;
}

ordered_json solve_json(const std::string& method, const RootSolve& s) {
    ordered_json j;
    j["method"] = method;
    j["r"] = s.r;
    j["residual"] = s.residual;
    j["iterations"] = s.iterations;
    j["bracket"] = {s.bracket_lo, s.bracket_hi};
    return j;
}

ordered_json bounds_json(const std::vector<std::pair<int, double>>& bounds) {
    ordered_json arr = ordered_json::array();
    for (const auto& [k, r] : bounds) arr.push_back({k, r});
    return arr;
}

ordered_json sequence_json(const std::string& method,
                           const EstimateSequence& seq) {
    ordered_json j;
    j["method"] = method;
    j["values"] = seq.values;
    if (seq.extrapolated) {
        j["extrapolated"] = *seq.extrapolated;
        if (seq.spread) j["spread"] = *seq.spread;
    }
    return j;
}

std::string num(const ordered_json& j) { return j.dump(); }

void push_flag(ordered_json& doc, const std::string& flag) {
    doc["flags"].push_back(flag);
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = fnv1a64(bytes);
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

InputInfo describe_input(const std::string& path, const std::string& content,
                         bool from_graph) {
    InputInfo info;
    info.path = path;
    info.stem = std::filesystem::path(path).stem().string();
    info.bytes = static_cast<long long>(content.size());
    info.hash = fnv1a64_hex(content);
    info.format = from_graph ? "graph" : "matrix";
    return info;
}

std::string default_reference_path() {
    return std::string(SOFICDIM_DATA_DIR) + "/reference_values.json";
}

std::optional<ReferenceEntry> lookup_reference(const std::string& refs_path,
                                               const std::string& stem) {
    std::ifstream in(refs_path);
    if (!in) return std::nullopt;
    nlohmann::json map;
    try {
        in >> map;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, "reference file " + refs_path + ": " + e.what());
    }
    auto it = map.find(stem);
    if (it == map.end()) return std::nullopt;
    ReferenceEntry ref;
    ref.r = it->at("r").get<double>();
    ref.dim = it->at("dim").get<double>();
    ref.note = it->value("note", std::string{});
    if (it->contains("printed_b2")) {
        ref.printed_b2 = it->at("printed_b2").get<double>();
        ref.b2_note = it->value("b2_note", std::string{});
    }
    return ref;
}

nlohmann::ordered_json report_header(const std::string& command,
                                     const InputInfo& info,
                                     const LoadedFamily& loaded) {
    ordered_json doc;
    doc["schema"] = 1;
    doc["tool"] = "soficdim";
    doc["command"] = command;
    ordered_json in;
    in["path"] = info.path;
    in["bytes"] = info.bytes;
    in["fnv1a64"] = info.hash;
    in["format"] = info.format;
    const auto& alpha = loaded.family.alphabet;
    in["dim"] = alpha.dim;
    ordered_json ms = ordered_json::array();
    for (int i = 0; i < alpha.dim; ++i) ms.push_back(alpha.m[static_cast<size_t>(i)]);
    in["m"] = ms;
    in["n"] = loaded.family.n;
    doc["input"] = in;
    if (loaded.from_graph) {
        auto violations = validate_right_resolving(loaded.graph);
        ordered_json val;
        val["right_resolving"] = violations.empty();
        ordered_json list = ordered_json::array();
        for (const auto& v : violations) {
            list.push_back("vertex " + std::to_string(v.vertex) + " label " +
                           label_to_string(v.label, loaded.graph.alphabet.dim) +
                           " carried by " + std::to_string(v.count) + " edges");
        }
        val["violations"] = list;
        doc["validation"] = val;
    }
    doc["flags"] = ordered_json::array();
    return doc;
}

void add_dim2_sections(nlohmann::ordered_json& doc, const Dim2Result& r) {
    ordered_json st;
    st["kind"] = "rank-1 tail";
    st["found"] = r.tail.has_value();
    st["primitive"] = r.primitive;
    if (r.tail) {
        st["string"] = keystring_json(r.tail->word);
        st["direction"] = direction_json(r.tail->direction);
    }
    doc["structure"] = st;
    if (!r.primitive) {
        push_flag(doc, "primitivity-warning: the summed key matrix is not primitive");
    }
    if (!r.applicable) {
        push_flag(doc,
                  "method-inapplicable: no rank-1 tail string found within the "
                  "search depth");
        return;
    }
    auto series = series_json(r.series);
    series["strings_enumerated"] = r.strings_enumerated;
    doc["series"] = series;
    if (r.budget_clamped) {
        push_flag(doc, "budget-clamped: coefficient enumeration stopped at K = " +
                           std::to_string(r.series.K()));
    }
    ordered_json result = solve_json("tower", r.solve);
    result["dim"] = r.dim;
    doc["result"] = result;
    doc["companion"] = {{"method", "companion-bound"},
                        {"bounds", bounds_json(r.lower_bounds)}};
}

void add_dim3_sections(nlohmann::ordered_json& doc, const Dim3Result& r) {
    ordered_json st;
    st["kind"] = "recursive";
    st["found"] = r.structure.has_value();
    st["primitive"] = r.primitive;
    if (r.structure) {
        st["direction"] = direction_json(r.structure->v);
        ordered_json pj = ordered_json::array();
        for (const auto& row : r.structure->P) pj.push_back(row);
        st["P"] = pj;
        st["removable"] = r.structure->removable;
        st["nonremovable"] = r.structure->nonremovable;
    }
    doc["structure"] = st;

    if (!r.l1_attempts.empty() || r.l1_tail) {
        ordered_json cert;
        if (r.l1_tail) cert["tail"] = keystring_json(*r.l1_tail);
        ordered_json attempts = ordered_json::array();
        for (const auto& a : r.l1_attempts) {
            ordered_json aj;
            aj["u"] = a.u;
            aj["t"] = keystring_json(a.t);
            aj["ok"] = a.ok;
            aj["witness"] = word_display(a.witness);
            aj["column_sum"] = a.column_sum;
            attempts.push_back(aj);
        }
        cert["attempts"] = attempts;
        doc["l1_certification"] = cert;
    }

    if (r.applicable) {
        auto series = series_json(r.series);
        doc["series"] = series;
        ordered_json result = solve_json(
            r.all_removable ? "degenerate-series" : "tree-series", r.solve);
        result["dim"] = r.dim;
        if (r.removable_used >= 0) result["removable_used"] = r.removable_used;
        if (!r.alternate_roots.empty()) {
            result["alternate_roots"] = bounds_json(r.alternate_roots);
        }
        doc["result"] = result;
        doc["companion"] = {{"method", "companion-bound"},
                            {"bounds", bounds_json(r.lower_bounds)}};
    }

    if (!r.estimate.values.empty()) {
        auto est = sequence_json("tree-sum", r.estimate);
        est["leak"] = r.estimate_leak;
        doc["estimate"] = est;
    }
    for (const auto& note : r.notes) push_flag(doc, note);
}

void add_oracle_section(nlohmann::ordered_json& doc,
                        const EstimateSequence& seq,
                        std::optional<double> delta) {
    auto j = sequence_json("oracle-extrapolation", seq);
    if (delta) j["delta"] = *delta;
    doc["oracle"] = j;
}

void add_reference_section(nlohmann::ordered_json& doc,
                           const ReferenceEntry& ref) {
    ordered_json j;
    j["r_printed"] = ref.r;
    j["dim_printed"] = ref.dim;
    bool matches = false;
    if (doc.contains("result")) {
        const double r = doc["result"]["r"].get<double>();
        const double d = doc["result"]["dim"].get<double>();
        j["r_delta"] = r - ref.r;
        j["dim_delta"] = d - ref.dim;
        matches = std::abs(r - ref.r) <= 1e-3;
    }
    j["matches"] = matches;
    if (!ref.note.empty()) j["note"] = ref.note;

    if (ref.printed_b2 && doc.contains("series") &&
        doc["series"]["coefficients"].size() > 2) {
        const double b2 = doc["series"]["coefficients"][2].get<double>();
        j["printed_b2"] = *ref.printed_b2;
        j["b2_computed"] = b2;
        j["b2_delta"] = b2 - *ref.printed_b2;
        if (std::abs(b2 - *ref.printed_b2) > 1e-6) {
            std::string flag = "printed-b2-mismatch: computed b_2 = " +
                               ordered_json(b2).dump() + " but the reference prints " +
                               ordered_json(*ref.printed_b2).dump();
            if (!ref.b2_note.empty()) flag += "; " + ref.b2_note;
            push_flag(doc, flag);
        }
    }
    doc["reference"] = j;

    if (doc.contains("result")) {
        if (matches) {
            push_flag(doc, "reference-match: root agrees with the printed value "
                           "within 1e-3");
        } else {
            std::string flag = "reference-mismatch: computed r = " +
                               num(doc["result"]["r"]) + " but the printed value is " +
                               ordered_json(ref.r).dump();
            if (!ref.note.empty()) flag += "; suspected cause: " + ref.note;
            push_flag(doc, flag);
        }
    }
}

std::string render_text(const nlohmann::ordered_json& doc) {
    std::ostringstream out;
    out << "soficdim " << doc["command"].get<std::string>() << "\n";
    const auto& in = doc["input"];
    out << "input: " << in["path"].get<std::string>() << " ("
        << in["format"].get<std::string>() << ", " << num(in["bytes"])
        << " bytes, fnv1a64 " << in["fnv1a64"].get<std::string>() << ")\n";
    out << "alphabet: d=" << num(in["dim"]) << " m=" << in["m"].dump()
        << " vertices=" << num(in["n"]) << "\n";
    if (doc.contains("validation")) {
        const auto& val = doc["validation"];
        if (val["right_resolving"].get<bool>()) {
            out << "validation: right-resolving\n";
        } else {
            out << "validation: " << val["violations"].size() << " violation(s)\n";
            for (const auto& v : val["violations"]) {
                out << "  - " << v.get<std::string>() << "\n";
            }
        }
    }
    if (doc.contains("structure")) {
        const auto& st = doc["structure"];
        out << "structure: " << st["kind"].get<std::string>()
            << (st["found"].get<bool>() ? " found" : " not found");
        if (st.contains("direction")) out << ", direction " << st["direction"].dump();
        if (st.contains("string")) out << ", string " << st["string"].dump();
        if (st.contains("removable")) out << ", removable " << st["removable"].dump();
        out << "\n";
    }
    if (doc.contains("series")) {
        const auto& s = doc["series"];
        out << "series: L=" << num(s["L"]) << " alpha=" << num(s["alpha"])
            << " K=" << num(s["K"]) << " c0=" << num(s["coefficients"][0]) << "\n";
    }
    if (doc.contains("result")) {
        const auto& r = doc["result"];
        out << "result: method=" << r["method"].get<std::string>()
            << " r=" << num(r["r"]) << " dim=" << num(r["dim"])
            << " residual=" << num(r["residual"]) << "\n";
    }
    if (doc.contains("companion")) {
        const auto& b = doc["companion"]["bounds"];
        if (!b.empty()) {
            out << "companion: r_" << num(b.back()[0]) << "=" << num(b.back()[1])
                << "\n";
        }
    }
    if (doc.contains("estimate")) {
        const auto& e = doc["estimate"];
        out << "estimate: tree-sum over " << e["values"].size() << " depths";
        if (e.contains("extrapolated")) {
            out << ", extrapolated " << num(e["extrapolated"]);
        }
        out << "\n";
    }
    if (doc.contains("oracle")) {
        const auto& o = doc["oracle"];
        out << "oracle: " << o["values"].size() << " depths";
        if (o.contains("extrapolated")) {
            out << ", extrapolated " << num(o["extrapolated"]);
        }
        if (o.contains("delta")) out << ", delta " << num(o["delta"]);
        out << "\n";
    }
    if (doc.contains("reference")) {
        const auto& ref = doc["reference"];
        out << "reference: printed r=" << num(ref["r_printed"])
            << (ref["matches"].get<bool>() ? " (matches)" : " (MISMATCH)") << "\n";
    }
    for (const auto& f : doc["flags"]) {
        out << "flag: " << f.get<std::string>() << "\n";
    }
    return out.str();
}

std::string render_csv(const nlohmann::ordered_json& doc) {
    std::ostringstream out;
    out << "section,index,value\n";
    if (doc.contains("series")) {
        const auto& c = doc["series"]["coefficients"];
        for (size_t k = 0; k < c.size(); ++k) {
            out << "series," << k << "," << num(c[k]) << "\n";
        }
    }
    if (doc.contains("companion")) {
        for (const auto& b : doc["companion"]["bounds"]) {
            out << "companion," << num(b[0]) << "," << num(b[1]) << "\n";
        }
    }
    if (doc.contains("estimate")) {
        for (const auto& v : doc["estimate"]["values"]) {
            out << "estimate," << num(v[0]) << "," << num(v[1]) << "\n";
        }
    }
    if (doc.contains("oracle")) {
        for (const auto& v : doc["oracle"]["values"]) {
            out << "oracle," << num(v[0]) << "," << num(v[1]) << "\n";
        }
    }
    return out.str();
}

}  // namespace soficdim
