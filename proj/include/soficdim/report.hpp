#pragma once

// Deterministic report documents. Every run produces one ordered JSON
// object; the text and CSV renderers are pure functions of that object, so
// byte-identical inputs and options give byte-identical outputs.

#include "soficdim/dim2.hpp"
#include "soficdim/dim3.hpp"
#include "soficdim/family.hpp"
#include "soficdim/oracle.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace soficdim {

std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

struct InputInfo {
    std::string path;
    std::string stem;    // basename without extension; reference lookup key
    long long bytes = 0;
    std::string hash;    // fnv1a64 of the raw file contents
    std::string format;  // "graph" or "matrix"
};
InputInfo describe_input(const std::string& path, const std::string& content,
                         bool from_graph);

// Printed values bundled with the example inputs, for cross-checking.
struct ReferenceEntry {
    double r = 0.0;
    double dim = 0.0;
    std::string note;  // suspected cause to surface on a mismatch
    std::optional<double> printed_b2;
    std::string b2_note;
};
// Entry for `stem` in the JSON map at refs_path; nullopt when the file or
// the key is absent.
std::optional<ReferenceEntry> lookup_reference(const std::string& refs_path,
                                               const std::string& stem);
std::string default_reference_path();

// {"schema", "tool", "command", "input", "validation"?, "flags": []}.
// validation appears only for graph inputs.
nlohmann::ordered_json report_header(const std::string& command,
                                     const InputInfo& info,
                                     const LoadedFamily& loaded);

void add_dim2_sections(nlohmann::ordered_json& doc, const Dim2Result& r);
void add_dim3_sections(nlohmann::ordered_json& doc, const Dim3Result& r);
void add_oracle_section(nlohmann::ordered_json& doc,
                        const EstimateSequence& seq,
                        std::optional<double> delta);
// Compares doc["result"] (and b_2 when the reference prints one) against
// the reference; appends reference-match / reference-mismatch flags.
void add_reference_section(nlohmann::ordered_json& doc,
                           const ReferenceEntry& ref);

std::string render_text(const nlohmann::ordered_json& doc);
std::string render_csv(const nlohmann::ordered_json& doc);

}  // namespace soficdim
