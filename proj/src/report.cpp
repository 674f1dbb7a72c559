#include "stabverify/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace sv {

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

bool VerificationReport::all_ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) {
        return c.status == "pass" || c.status == "infeasible";
    });
}

std::string VerificationReport::json() const {
    std::ostringstream os;
    os << "{\n";
    os << "  \"tool\": \"" << kToolVersion << "\",\n";
    os << "  \"schema\": 1,\n";
    os << "  \"command\": \"" << json_escape(command) << "\",\n";
    if (!ring_json.empty()) os << "  \"ring\": " << ring_json << ",\n";
    os << "  \"checks\": [\n";
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto& c = checks[i];
        os << "    {\"name\": \"" << json_escape(c.name) << "\", \"anchor\": \""
           << json_escape(c.anchor) << "\", \"status\": \"" << c.status << "\", \"witness\": \""
           << json_escape(c.witness) << "\", \"wall_ms\": " << c.wall_ms << "}"
           << (i + 1 < checks.size() ? "," : "") << "\n";
    }
    os << "  ]";
    if (!csv.empty()) os << ",\n  \"csv\": \"" << json_escape(csv) << "\"";
    os << "\n}\n";
    return os.str();
}

void VerificationReport::write_file(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write report file: " + path);
    f << json();
}

const std::vector<std::string>& anchor_registry() {
    static const std::vector<std::string> registry = {
        "basis-equals-unimodular",
        "basis-complex-cohen-macaulay",
        "tits-order-complex-cohen-macaulay",
        "augmented-complex-not-spherical",
        "augmented-relative-vanishing",
        "augmented-vs-inner-vanishing",
        "steinberg-rank",
        "apartments-generate",
        "relative-symbols-generate",
        "coinvariants-vanish-half",
        "relative-coinvariants-vanish-half",
        "charney-coinvariants-vanish-half",
        "relative-charney-coinvariants-vanish-half",
        "integral-obstruction-rank-one",
        "stability-range-slope-one",
        "duality-tits-opposite",
        "duality-frame-coframe",
        "splitting-cutting-down",
        "splitting-dualizing",
        "tits-fiber-models",
        "span-map-surjective",
        "stable-rank-one-gate",
        "splitting-poset-spherical",
        "plumbing",
    };
    return registry;
}

bool anchor_known(const std::string& anchor) {
    const auto& reg = anchor_registry();
    return std::find(reg.begin(), reg.end(), anchor) != reg.end();
}

}  // namespace sv
