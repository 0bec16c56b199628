// Copyright 2026 The ChiralWalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chiralwalk/io.hpp"

#include <array>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

namespace chiralwalk {

namespace {

double parse_double(const std::string& token) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError("bad numeric field '" + token + "'");
    }
    return value;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::vector<std::string> nonempty_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

std::uint64_t fnv1a_init() { return 14695981039346656037ull; }

void fnv1a_mix(std::uint64_t* hash, std::uint64_t value) {
    for (int byte = 0; byte < 8; ++byte) {
        *hash ^= (value >> (8 * byte)) & 0xffull;
        *hash *= 1099511628211ull;
    }
}

void fnv1a_mix_double(std::uint64_t* hash, double value) {
    std::uint64_t bits = 0;
    static_assert(sizeof(bits) == sizeof(value));
    std::memcpy(&bits, &value, sizeof(bits));
    fnv1a_mix(hash, bits);
}

nlohmann::json parse_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw ParseError("malformed structured text document");
    }
    return j;
}

}  // namespace

std::string format_double(double value) {
    std::array<char, 64> buffer{};
    auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                                   std::chars_format::general, 17);
    if (ec != std::errc{}) {
        throw NumericError("failed to format a floating-point value");
    }
    return std::string(buffer.data(), ptr);
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path parent = path.parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    const std::filesystem::path temp = path.string() + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw ParseError("cannot open '" + temp.string() + "' for writing");
        out << content;
        if (!out.flush()) throw ParseError("failed writing '" + temp.string() + "'");
    }
    std::filesystem::rename(temp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::uint64_t graph_fingerprint(const HermitianGraph& g) {
    std::uint64_t hash = fnv1a_init();
    fnv1a_mix(&hash, static_cast<std::uint64_t>(g.vertex_count()));
    const ComplexMatrix& w = g.weights();
    for (Eigen::Index c = 0; c < w.cols(); ++c) {
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
            fnv1a_mix_double(&hash, w(r, c).real());
            fnv1a_mix_double(&hash, w(r, c).imag());
        }
    }
    return hash;
}

std::string graph_to_json(const HermitianGraph& g) {
    nlohmann::json j;
    j["n_vertices"] = g.vertex_count();
    nlohmann::json edges = nlohmann::json::array();
    for (const WeightedEdge& e : g.edges()) {
        edges.push_back({{"i", e.i}, {"j", e.j}, {"re", e.weight.real()}, {"im", e.weight.imag()}});
    }
    j["edges"] = std::move(edges);
    return j.dump(2) + "\n";
}

HermitianGraph graph_from_json(const std::string& text) {
    const nlohmann::json j = parse_json(text);
    try {
        const int n = j.at("n_vertices").get<int>();
        std::vector<WeightedEdge> edges;
        for (const nlohmann::json& e : j.at("edges")) {
            edges.push_back({e.at("i").get<int>(), e.at("j").get<int>(),
                             Complex{e.at("re").get<double>(), e.at("im").get<double>()}});
        }
        return HermitianGraph(n, edges);
    } catch (const nlohmann::json::exception& err) {
        throw ParseError(std::string("graph document: ") + err.what());
    }
}

std::string phases_to_json(const ChiralPhaseAssignment& phases) {
    nlohmann::json entries = nlohmann::json::array();
    for (const PhasedEdge& e : phases.entries()) {
        entries.push_back({{"i", e.i}, {"j", e.j}, {"alpha", e.phase}});
    }
    nlohmann::json j;
    j["phases"] = std::move(entries);
    return j.dump(2) + "\n";
}

ChiralPhaseAssignment phases_from_json(const std::string& text) {
    const nlohmann::json j = parse_json(text);
    try {
        std::vector<PhasedEdge> entries;
        for (const nlohmann::json& e : j.at("phases")) {
            entries.push_back(
                {e.at("i").get<int>(), e.at("j").get<int>(), e.at("alpha").get<double>()});
        }
        return ChiralPhaseAssignment(entries);
    } catch (const nlohmann::json::exception& err) {
        throw ParseError(std::string("phase document: ") + err.what());
    }
}

std::string state_to_json(const StateVector& state) {
    nlohmann::json amplitudes = nlohmann::json::array();
    for (Eigen::Index k = 0; k < state.size(); ++k) {
        const Complex a = state.amplitudes()(k);
        amplitudes.push_back({{"re", a.real()}, {"im", a.imag()}});
    }
    nlohmann::json j;
    j["amplitudes"] = std::move(amplitudes);
    return j.dump(2) + "\n";
}

StateVector state_from_json(const std::string& text) {
    const nlohmann::json j = parse_json(text);
    try {
        const nlohmann::json& amplitudes = j.at("amplitudes");
        ComplexVector amp(static_cast<Eigen::Index>(amplitudes.size()));
        Eigen::Index k = 0;
        for (const nlohmann::json& a : amplitudes) {
            amp(k++) = Complex{a.at("re").get<double>(), a.at("im").get<double>()};
        }
        return StateVector(std::move(amp));
    } catch (const nlohmann::json::exception& err) {
        throw ParseError(std::string("state document: ") + err.what());
    }
}

std::string trace_to_csv(const ProbabilityTrace& trace) {
    std::string out = "t";
    for (Eigen::Index j = 0; j < trace.probabilities.cols(); ++j) {
        out += ",v" + std::to_string(j + 1);
    }
    out += "\n";
    for (Eigen::Index r = 0; r < trace.times.size(); ++r) {
        out += format_double(trace.times(r));
        for (Eigen::Index j = 0; j < trace.probabilities.cols(); ++j) {
            out += ",";
            out += format_double(trace.probabilities(r, j));
        }
        out += "\n";
    }
    return out;
}

ProbabilityTrace trace_from_csv(const std::string& text) {
    const std::vector<std::string> lines = nonempty_lines(text);
    if (lines.empty()) throw ParseError("trace CSV is empty");
    const std::vector<std::string> header = split(lines[0], ',');
    if (header.size() < 2 || header[0] != "t") {
        throw ParseError("trace CSV header must be t,v1,...,vn");
    }
    for (std::size_t j = 1; j < header.size(); ++j) {
        if (header[j] != "v" + std::to_string(j)) {
            throw ParseError("unexpected trace CSV column '" + header[j] + "'");
        }
    }

    const Eigen::Index n = static_cast<Eigen::Index>(header.size()) - 1;
    const Eigen::Index rows = static_cast<Eigen::Index>(lines.size()) - 1;
    if (rows < 1) throw ParseError("trace CSV has no data rows");

    ProbabilityTrace trace;
    trace.times.resize(rows);
    trace.probabilities.resize(rows, n);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const std::vector<std::string> fields = split(lines[static_cast<std::size_t>(r) + 1], ',');
        if (static_cast<Eigen::Index>(fields.size()) != n + 1) {
            throw ParseError("trace CSV row " + std::to_string(r + 1) + " has " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(n + 1));
        }
        trace.times(r) = parse_double(fields[0]);
        for (Eigen::Index j = 0; j < n; ++j) {
            trace.probabilities(r, j) = parse_double(fields[static_cast<std::size_t>(j) + 1]);
        }
    }
    return trace;
}

std::string lindblad_kind_name(LindbladKind kind) {
    switch (kind) {
        case LindbladKind::Scattering:
            return "scattering";
        case LindbladKind::Dephasing:
            return "dephasing";
        case LindbladKind::Dissipation:
            return "dissipation";
    }
    throw InvalidParamsError("unknown lindblad kind");
}

LindbladKind lindblad_kind_from_name(const std::string& name) {
    if (name == "scattering") return LindbladKind::Scattering;
    if (name == "dephasing") return LindbladKind::Dephasing;
    if (name == "dissipation") return LindbladKind::Dissipation;
    throw ParseError("unknown lindblad kind '" + name +
                     "'; expected scattering, dephasing, or dissipation");
}

std::string reference_to_csv(const ReferenceTable& table) {
    std::string out;
    out += "# measure_time: " + format_double(table.measure_time) + "\n";
    out += "# lindblads: ";
    for (std::size_t k = 0; k < table.kinds.size(); ++k) {
        if (k > 0) out += ",";
        out += lindblad_kind_name(table.kinds[k]);
    }
    out += "\n";
    out += "# probe_fingerprint: " + std::to_string(table.probe_fingerprint) + "\n";
    out += "# monotone_end: " + std::to_string(table.monotone_end) + "\n";
    out += "omega,p2\n";
    for (Eigen::Index k = 0; k < table.omega_grid.size(); ++k) {
        out += format_double(table.omega_grid(k)) + "," +
               format_double(table.transfer_probabilities(k)) + "\n";
    }
    return out;
}

ReferenceTable reference_from_csv(const std::string& text) {
    ReferenceTable table;
    std::vector<std::pair<double, double>> rows;
    bool header_seen = false;
    bool time_seen = false;
    bool kinds_seen = false;
    bool fingerprint_seen = false;
    bool monotone_seen = false;

    for (const std::string& line : nonempty_lines(text)) {
        if (line.rfind("# ", 0) == 0) {
            const std::size_t colon = line.find(": ");
            if (colon == std::string::npos) throw ParseError("bad metadata line '" + line + "'");
            const std::string key = line.substr(2, colon - 2);
            const std::string value = line.substr(colon + 2);
            if (key == "measure_time") {
                table.measure_time = parse_double(value);
                time_seen = true;
            } else if (key == "lindblads") {
                table.kinds.clear();
                if (!value.empty()) {
                    for (const std::string& name : split(value, ',')) {
                        table.kinds.push_back(lindblad_kind_from_name(name));
                    }
                }
                kinds_seen = true;
            } else if (key == "probe_fingerprint") {
                try {
                    table.probe_fingerprint = std::stoull(value);
                } catch (const std::exception&) {
                    throw ParseError("bad probe_fingerprint '" + value + "'");
                }
                fingerprint_seen = true;
            } else if (key == "monotone_end") {
                try {
                    table.monotone_end = static_cast<Eigen::Index>(std::stoll(value));
                } catch (const std::exception&) {
                    throw ParseError("bad monotone_end '" + value + "'");
                }
                monotone_seen = true;
            } else {
                throw ParseError("unknown metadata key '" + key + "'");
            }
            continue;
        }
        if (!header_seen) {
            if (line != "omega,p2") throw ParseError("reference CSV header must be omega,p2");
            header_seen = true;
            continue;
        }
        const std::vector<std::string> fields = split(line, ',');
        if (fields.size() != 2) throw ParseError("bad reference CSV row '" + line + "'");
        rows.emplace_back(parse_double(fields[0]), parse_double(fields[1]));
    }

    if (!header_seen || rows.empty()) throw ParseError("reference CSV has no data");
    if (!time_seen || !kinds_seen || !fingerprint_seen || !monotone_seen) {
        throw ParseError(
            "reference CSV must carry measure_time, lindblads, probe_fingerprint, and "
            "monotone_end metadata");
    }
    table.omega_grid.resize(static_cast<Eigen::Index>(rows.size()));
    table.transfer_probabilities.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t k = 0; k < rows.size(); ++k) {
        table.omega_grid(static_cast<Eigen::Index>(k)) = rows[k].first;
        table.transfer_probabilities(static_cast<Eigen::Index>(k)) = rows[k].second;
    }
    return table;
}

std::string snapshots_to_json(const RealVector& times, const std::vector<ComplexMatrix>& states) {
    if (static_cast<Eigen::Index>(states.size()) != times.size()) {
        throw DimensionMismatchError("snapshot count does not match time count");
    }
    nlohmann::json j;
    nlohmann::json time_array = nlohmann::json::array();
    for (Eigen::Index k = 0; k < times.size(); ++k) time_array.push_back(times(k));
    j["times"] = std::move(time_array);

    nlohmann::json state_array = nlohmann::json::array();
    for (const ComplexMatrix& rho : states) {
        nlohmann::json entries = nlohmann::json::array();
        for (Eigen::Index r = 0; r < rho.rows(); ++r) {
            for (Eigen::Index c = 0; c < rho.cols(); ++c) {
                entries.push_back({rho(r, c).real(), rho(r, c).imag()});
            }
        }
        state_array.push_back(std::move(entries));
    }
    j["states"] = std::move(state_array);
    return j.dump() + "\n";
}

}  // namespace chiralwalk
