#include "superw/cli.hpp"

#include "superw/algebra.hpp"
#include "superw/classify.hpp"
#include "superw/involution.hpp"
#include "superw/repmod.hpp"
#include "superw/scalar.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace superw::cli {

namespace {

using nlohmann::json;

/// Bad input discovered after CLI11 is done: reported on stderr, exit 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* kSigmaNote =
    "with theta(L_m) = L_{-m} and L_i u_j = (a-j+ib)u_{i+j}, the adjoint equations for L_{+-1} force "
    "Re b = -1/2 (sigma = -1, checked by brute force); this differs from the frequently quoted condition "
    "b in 1/2 + iR, which here yields a non-real weight ratio";
const char* kConjugationNote = "theta is extended by theta(s x) = conj(s) theta(x)";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Scalar scalar_flag(const std::string& name, const std::string& text) {
    try {
        return parse_scalar(text);
    } catch (const ParseError& e) {
        throw UsageError("--" + name + " '" + text + "': at offset " + std::to_string(e.position()) + ", expected " +
                         e.expected());
    }
}

Element element_arg(const std::string& text) {
    try {
        return parse_element(text);
    } catch (const ParseError& e) {
        throw UsageError("element '" + text + "': at offset " + std::to_string(e.position()) + ", expected " +
                         e.expected());
    }
}

InvolutionSpec spec_file(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return parse_involution_spec(text);
    } catch (const ParseError& e) {
        throw UsageError(path + ": at offset " + std::to_string(e.position()) + ", expected " + e.expected());
    }
}

json violation_json(const Violation& v) {
    return {{"indices", v.indices}, {"lhs", v.lhs}, {"relation", v.relation}, {"rhs", v.rhs}};
}

json spec_json(const InvolutionSpec& s) {
    return {{"alpha", to_string(s.alpha)}, {"b1L", to_string(s.b1L)}, {"c0G", to_string(s.c0G)},
            {"d0G", to_string(s.d0G)},     {"d1L", to_string(s.d1L)}, {"delta", s.delta},
            {"variant", to_string(s.variant)}};
}

struct Report {
    explicit Report(std::string c = {}) : command(std::move(c)) {}

    std::string command;
    json params = json::object();
    std::optional<std::int64_t> window;
    std::vector<Violation> violations;
    json derived = json::object();
    std::vector<std::string> notes;
    bool infeasible = false;

    std::string status() const {
        if (violations.empty() && !infeasible) return "pass";
        return infeasible ? "infeasible" : "fail";
    }

    json to_json() const {
        json v = json::array();
        for (const auto& x : violations) v.push_back(violation_json(x));
        return {{"command", command}, {"derived", derived},  {"notes", notes},
                {"params", params},   {"status", status()},  {"violations", v},
                {"window", window ? json(*window) : json(nullptr)}};
    }
};

Report check_report(std::string command, std::int64_t window, const CheckReport& r) {
    Report out{std::move(command)};
    out.window = window;
    out.violations = r.violations;
    out.notes = r.notes;
    out.derived["checked"] = r.checked;
    return out;
}

std::int64_t require_window(std::int64_t n, std::int64_t min) {
    if (n < min) throw UsageError("--window must be >= " + std::to_string(min));
    return n;
}

// Flag storage for every subcommand; CLI11 binds into these.
struct Flags {
    std::int64_t window = 0;
    std::string a, b, a2, b2, family = "Aab", spec, coeffs, json_path;
    std::string x, y;
};

void add_common(CLI::App* cmd, Flags& f, std::int64_t default_window) {
    f.window = default_window;
    cmd->add_option("--window", f.window, "index window radius N")->capture_default_str();
    cmd->add_option("--json", f.json_path, "also write the report to this path");
}

Report run_bracket(const Flags& f) {
    const Element x = element_arg(f.x), y = element_arg(f.y);
    Report r{"bracket"};
    r.params = {{"x", to_string(x)}, {"y", to_string(y)}};
    r.derived["result"] = to_string(bracket(x, y));
    return r;
}

Report run_generators(const Flags& f) {
    const std::int64_t n = require_window(f.window, 1);
    const auto seed = standard_generating_set();
    const auto c = generation_closure(seed, n);
    Report r{"generators"};
    r.window = n;
    json seed_names = json::array(), missing = json::array();
    for (const auto& g : seed) seed_names.push_back(to_string(g));
    for (const auto& g : c.missing) {
        missing.push_back(to_string(g));
        r.violations.push_back({"closure", {to_string(g)}, "0", "1*" + to_string(g)});
    }
    r.derived = {{"missing", missing},
                 {"reached", c.reached.size()},
                 {"seed", seed_names},
                 {"window_size", c.window_size}};
    return r;
}

Report run_module_check(const Flags& f) {
    const std::int64_t n = require_window(f.window, 1);
    const FamilyKind kind = parse_family_kind(f.family);
    if (f.a.empty()) throw UsageError("module-check needs --a");
    const Scalar a = scalar_flag("a", f.a);
    Report r{"module-check"};
    r.window = n;
    r.params = {{"a", to_string(a)}, {"family", to_string(kind)}};

    std::optional<VirasoroFamily> even;
    switch (kind) {
        case FamilyKind::Aab: {
            if (f.b.empty()) throw UsageError("family Aab needs --b");
            const Scalar b = scalar_flag("b", f.b);
            r.params["b"] = to_string(b);
            even = VirasoroFamily::ab(a, b);
            break;
        }
        case FamilyKind::Aalpha:
            even = VirasoroFamily::alpha(a);
            break;
        case FamilyKind::Bbeta:
            even = VirasoroFamily::beta(a);
            break;
    }
    if (kind != FamilyKind::Aab && !f.b.empty()) throw UsageError("--b only applies to family Aab");

    SuperModuleSpec spec = SuperModuleSpec::virasoro_only(*even);
    if (!f.a2.empty() || !f.b2.empty()) {
        if (f.a2.empty() || f.b2.empty()) throw UsageError("the odd part needs both --a2 and --b2");
        const Scalar a2 = scalar_flag("a2", f.a2), b2 = scalar_flag("b2", f.b2);
        r.params["a2"] = to_string(a2);
        r.params["b2"] = to_string(b2);
        spec.odd_family = VirasoroFamily::ab(a2, b2);
    }
    // Relations reach x(y w) with degrees up to 2N.
    spec.coeffs = CoefficientTable(2 * n);
    if (!f.coeffs.empty()) {
        const std::string text = read_file(f.coeffs);
        try {
            spec.coeffs = parse_coefficient_table(text, 2 * n);
        } catch (const ParseError& e) {
            throw UsageError(f.coeffs + ": at offset " + std::to_string(e.position()) + ", expected " + e.expected());
        }
        r.params["coeffs"] = std::filesystem::path(f.coeffs).filename().string();
    }

    const bool l_only = f.coeffs.empty() && !spec.odd_family;
    const auto families =
        l_only ? std::vector<Family>{Family::L} : std::vector<Family>(kFamilies.begin(), kFamilies.end());
    Report out = check_report("module-check", n, module_axiom_check(spec, n, families));
    out.params = r.params;
    if (l_only) out.notes.push_back("no odd part and no coefficient table: only the L-action is checked");
    return out;
}

Report run_classify(const Flags& f) {
    for (const auto* p : {&f.a, &f.b, &f.a2, &f.b2})
        if (p->empty()) throw UsageError("classify needs --a, --b, --a2 and --b2");
    const Scalar a = scalar_flag("a", f.a), b = scalar_flag("b", f.b);
    const Scalar a2 = scalar_flag("a2", f.a2), b2 = scalar_flag("b2", f.b2);
    const std::int64_t n = require_window(f.window, 4);
    const Verdict v = classify(ModuleParams::ab(a, b, a2, b2), n);

    Report r{"classify"};
    r.window = n;
    r.params = {{"a", to_string(a)}, {"a2", to_string(a2)}, {"b", to_string(b)}, {"b2", to_string(b2)}};
    json dims = json::object(), zero = json::object(), patterns = json::object();
    for (std::size_t k = 0; k < kCoeffFns.size(); ++k) {
        const std::string name = to_string(kCoeffFns[k]);
        dims[name] = v.dimensions[k];
        zero[name] = v.forced_zero[k];
        patterns[name] = v.patterns[k];
    }
    r.derived = {{"case_tags", v.case_tags},
                 {"core_radius", v.core_radius},
                 {"dimensions", dims},
                 {"final", to_string(v.final)},
                 {"forced_zero", zero},
                 {"patterns", patterns},
                 {"product_forced_zero", v.product_forced_zero},
                 {"relation_instances", v.relation_instances}};
    r.notes = v.notes;

    switch (v.final) {
        case FinalVerdict::TrivialIGH:
            break;
        case FinalVerdict::OutOfCaseTable:
            r.violations.push_back({"case-table", {}, "out-of-case-table", "trivial-IGH"});
            break;
        case FinalVerdict::Witness:
            for (std::size_t k = 0; k < kCoeffFns.size(); ++k) {
                if (kCoeffFns[k] == CoeffFn::g || kCoeffFns[k] == CoeffFn::gt) continue;
                const std::string name = to_string(kCoeffFns[k]);
                if (!v.forced_zero[k]) r.violations.push_back({"vanishing", {name}, name, "0"});
            }
            if (!v.product_forced_zero) r.violations.push_back({"vanishing", {"g", "gt"}, "g*gt", "0"});
            break;
    }
    return r;
}

Report run_involution_check(const Flags& f) {
    if (f.spec.empty()) throw UsageError("involution-check needs --spec");
    const InvolutionSpec spec = spec_file(f.spec);
    const std::int64_t n = require_window(f.window, 1);
    Report r = check_report("involution-check", n, involution_axiom_check(spec, n));
    r.params = {{"spec", spec_json(spec)}};
    r.derived["constraints_broken"] = validate(spec);
    r.notes.push_back(kConjugationNote);
    return r;
}

Report run_unitary(const Flags& f) {
    if (f.spec.empty() || f.a.empty() || f.b.empty()) throw UsageError("unitary needs --spec, --a and --b");
    const InvolutionSpec spec = spec_file(f.spec);
    const Scalar a = scalar_flag("a", f.a), b = scalar_flag("b", f.b);
    const std::int64_t n = require_window(f.window, 1);
    const UnitaryResult res = unitary_weights(spec, a, b, n);

    Report r{"unitary"};
    r.window = n;
    r.params = {{"a", to_string(a)}, {"b", to_string(b)}, {"spec", spec_json(spec)}};
    r.derived = {{"equations", res.equations}, {"vacuous", res.vacuous}};
    if (res.feasible()) {
        json w = json::array();
        for (const auto& [j, x] : res.weights->weights) w.push_back({{"j", j}, {"w", to_string(x)}});
        r.derived["weights"] = w;
    } else {
        r.infeasible = true;
        r.derived["reason"] = res.reason;
        if (res.witness) r.violations.push_back(*res.witness);
    }
    r.notes = res.notes;
    r.notes.push_back(kConjugationNote);
    r.notes.push_back(kSigmaNote);
    return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact checks for the super W(2,2) algebra, its intermediate-series modules and anti-involutions",
                 "superw"};
    app.require_subcommand(1);
    Flags f;

    auto* bracket_cmd = app.add_subcommand("bracket", "bracket of two elements");
    bracket_cmd->add_option("x", f.x, "first element, e.g. 'L[2] + 1/2*G[-1]'")->required();
    bracket_cmd->add_option("y", f.y, "second element")->required();
    bracket_cmd->add_option("--json", f.json_path, "also write the report to this path");

    auto* jacobi_cmd = app.add_subcommand("jacobi", "graded Jacobi identity on the window");
    auto* skew_cmd = app.add_subcommand("skew", "super-skew-symmetry on the window");
    auto* gen_cmd = app.add_subcommand("generators", "closure of the standard generating set");
    auto* module_cmd = app.add_subcommand("module-check", "module axioms of an intermediate-series module");
    auto* classify_cmd = app.add_subcommand("classify", "window classification of the coefficient functions");
    auto* inv_cmd = app.add_subcommand("involution-check", "anti-involution axioms for a spec file");
    auto* unitary_cmd = app.add_subcommand("unitary", "diagonal Hermitian form on A_{a,b,0,0,0}");

    add_common(jacobi_cmd, f, 6);
    add_common(skew_cmd, f, 6);
    add_common(gen_cmd, f, 6);

    add_common(module_cmd, f, 5);
    module_cmd->add_option("--family", f.family, "Aab, Aalpha or Bbeta")->capture_default_str();
    module_cmd->add_option("--a", f.a, "a (Aab), alpha (Aalpha) or beta (Bbeta)");
    module_cmd->add_option("--b", f.b, "b (Aab only)");
    module_cmd->add_option("--a2", f.a2, "a' of the odd part");
    module_cmd->add_option("--b2", f.b2, "b' of the odd part");
    module_cmd->add_option("--coeffs", f.coeffs, "coefficient table file");

    add_common(classify_cmd, f, 6);
    for (const auto& [name, dest] : {std::pair<const char*, std::string*>{"--a", &f.a},
                                      {"--b", &f.b}, {"--a2", &f.a2}, {"--b2", &f.b2}})
        classify_cmd->add_option(name, *dest);

    add_common(inv_cmd, f, 5);
    inv_cmd->add_option("--spec", f.spec, "involution spec file");

    add_common(unitary_cmd, f, 6);
    unitary_cmd->add_option("--spec", f.spec, "involution spec file");
    unitary_cmd->add_option("--a", f.a);
    unitary_cmd->add_option("--b", f.b);

    std::vector<const char*> argv{"superw"};
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    Report report;
    try {
        if (*bracket_cmd) report = run_bracket(f);
        else if (*jacobi_cmd) report = check_report("jacobi", require_window(f.window, 1), jacobi_check(f.window));
        else if (*skew_cmd) report = check_report("skew", require_window(f.window, 1), skew_check(f.window));
        else if (*gen_cmd) report = run_generators(f);
        else if (*module_cmd) report = run_module_check(f);
        else if (*classify_cmd) report = run_classify(f);
        else if (*inv_cmd) report = run_involution_check(f);
        else report = run_unitary(f);
    } catch (const UsageError& e) {
        err << "superw: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "superw: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "superw: " << e.what() << '\n';
        return kExitUsage;
    } catch (const WindowExhausted& e) {
        err << "superw: " << e.what() << '\n';
        return kExitUsage;
    }

    const std::string text = report.to_json().dump(2) + "\n";
    out << text;
    if (!f.json_path.empty()) {
        std::ofstream file(f.json_path, std::ios::binary);
        if (!file || !(file << text)) {
            err << "superw: cannot write " << f.json_path << '\n';
            return kExitUsage;
        }
    }
    return report.status() == "pass" ? kExitPass : kExitFail;
}

}  // namespace superw::cli
