#include "conservkit/cli.hpp"

#include "conservkit/algebra.hpp"
#include "conservkit/automorphisms.hpp"
#include "conservkit/derivations.hpp"
#include "conservkit/errors.hpp"
#include "conservkit/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace conservkit::cli {

namespace {

using json = nlohmann::json;

std::string render_matrix(const Matrix& m, const std::string& indent = "  ") {
    std::vector<std::string> cells;
    std::size_t width = 0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            cells.push_back(m(r, c).str());
            width = std::max(width, cells.back().size());
        }
    std::ostringstream os;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        os << indent << "[";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const std::string& s = cells[r * m.cols() + c];
            os << (c ? " " : "") << std::string(width - s.size(), ' ') << s;
        }
        os << "]\n";
    }
    return os.str();
}

json space_to_json(const LinearMapSpace& space) {
    json basis = json::array();
    for (const auto& m : space.basis()) basis.push_back(io::matrix_to_json(m));
    return json{{"dim", space.size()}, {"basis", basis}};
}

json params_to_json(const AutParams& p) { return json{{"a", p.a().str()}, {"b", p.b().str()}}; }
json params_to_json(const DerivationParams& p) { return json{{"alpha", p.alpha.str()}, {"beta", p.beta.str()}}; }

json counterexample_to_json(const Counterexample& c) {
    return json{{"sample", c.sample_index},
                {"x", io::vector_to_json(c.x)},
                {"expected", io::vector_to_json(c.expected)},
                {"observed", io::vector_to_json(c.observed)}};
}

const char* tag_name(LocDerVerdict::Tag tag) { return tag == LocDerVerdict::Tag::Equal ? "EQUAL" : "INCONCLUSIVE"; }

struct Options {
    std::string report_path;

    // build-w
    std::size_t n = 2;
    std::size_t fixed = 1;
    std::string basis = "alpha";
    std::string out_path;

    std::string algebra_path;
    std::string compare;
    std::string labels;
    std::string span;
    std::string method = "both";
    std::string matrix_path;
    std::string family;
    std::string samples_path;
};

class Runner {
public:
    Runner(RunReport& report, std::ostream& out) : report_(report), out_(out) {}

    void build_w(const Options& o) {
        report_.inputs = {{"n", o.n}, {"fixed", o.fixed}, {"basis", o.basis}};
        if (o.fixed < 1 || o.fixed > o.n) throw InputError("--fixed must lie in 1..n");
        StructureTensor alg = build_kantor(o.n, o.fixed - 1);
        if (o.basis == "e") {
            if (o.n != 2) throw InputError("--basis e is defined for n = 2 only");
            alg = change_basis(alg, e_basis());
        }
        const json encoded = io::algebra_to_json(alg);
        if (o.out_path.empty())
            out_ << encoded.dump(2) << "\n";
        else {
            io::write_text_file(o.out_path, encoded.dump(2) + "\n");
            report_.inputs["out"] = o.out_path;
        }
        out_ << "built W(" << o.n << ") in the " << o.basis << "-basis: dim " << alg.dim() << ", "
             << encoded["c"].size() << " nonzero structure constants\n";
        report_.verdict = {{"dim", alg.dim()}, {"nonzero", encoded["c"].size()}};
    }

    void table(const Options& o) {
        const StructureTensor alg = load(o.algebra_path);
        std::vector<std::string> names = default_labels(alg.dim());
        if (!o.labels.empty()) {
            names.clear();
            std::stringstream ss(o.labels);
            for (std::string item; std::getline(ss, item, ',');) names.push_back(item);
            if (names.size() != alg.dim()) throw InputError("--labels needs one label per basis vector");
        }
        out_ << render_table(alg, names);
        report_.verdict["dim"] = alg.dim();
        if (o.compare.empty()) return;
        if (o.compare != "paper") throw InputError("--compare accepts only 'paper'");
        report_.inputs["compare"] = o.compare;
        if (alg.dim() != 8) throw InputError("--compare paper needs an 8-dimensional algebra");

        const auto diffs = diff_tables(alg, published_table());
        json cells = json::array();
        out_ << "diff against the published table: " << diffs.size() << " cell(s)\n";
        for (const auto& d : diffs) {
            const std::string lhs = render_combination(d.lhs, names);
            const std::string rhs = render_combination(d.rhs, names);
            out_ << "  " << names[d.i] << " * " << names[d.j] << ": derived " << lhs << ", published " << rhs << "\n";
            cells.push_back(json{{"i", d.i + 1}, {"j", d.j + 1}, {"derived", lhs}, {"published", rhs}});
        }
        report_.verdict["diff"] = cells;
        if (!diffs.empty()) report_.exit_code = kVerificationFailure;
    }

    void sub(const Options& o) {
        const StructureTensor alg = load(o.algebra_path);
        const auto span = io::parse_span(o.span);
        report_.inputs["span"] = o.span;
        try {
            const StructureTensor restricted = subalgebra(alg, span);
            out_ << "span is closed; subalgebra of dim " << restricted.dim() << "\n";
            report_.verdict = {{"closed", true}, {"dim", restricted.dim()}};
            if (!o.out_path.empty()) {
                io::write_text_file(o.out_path, io::algebra_to_json(restricted).dump(2) + "\n");
                report_.inputs["out"] = o.out_path;
            }
        } catch (const ClosureError& e) {
            out_ << "not closed: " << e.what() << "\n";
            report_.verdict = {{"closed", false}, {"pair", {e.i() + 1, e.j() + 1}}, {"message", e.what()}};
            report_.exit_code = kVerificationFailure;
        }
    }

    void der(const Options& o) {
        const StructureTensor alg = load(o.algebra_path);
        const LinearMapSpace space = derivation_space(alg);
        out_ << "dim Der = " << space.size() << "\n";
        for (std::size_t b = 0; b < space.size(); ++b) out_ << "D" << b + 1 << " =\n" << render_matrix(space.basis()[b]);
        report_.verdict["der"] = space_to_json(space);
        if (alg.dim() == 8) {
            const std::vector<Matrix> family{derivation_from_params({1, 0}), derivation_from_params({0, 1})};
            const bool match = space.same_span(LinearMapSpace::span_of(8, family));
            out_ << "span equals the (alpha, beta) derivation family: " << (match ? "yes" : "no") << "\n";
            report_.verdict["family_match"] = match;
        }
    }

    void locder(const Options& o) {
        const StructureTensor alg = load(o.algebra_path);
        if (o.method != "sampling" && o.method != "minors" && o.method != "both")
            throw InputError("--method must be sampling, minors or both");
        report_.inputs["method"] = o.method;

        const LinearMapSpace der = derivation_space(alg);
        out_ << "dim Der = " << der.size() << "\n";
        report_.verdict["dim_der"] = der.size();

        std::optional<LinearMapSpace> outer;
        auto combine = [&](const char* name, const LinearMapSpace& space) {
            const LocDerVerdict v = certify_locder(der, space);
            out_ << name << ": outer dim " << space.size() << ", " << tag_name(v.tag) << "\n";
            report_.verdict["methods"][name] = {{"outer_dim", space.size()}, {"verdict", tag_name(v.tag)}};
            outer = outer ? intersect(*outer, space) : space;
        };

        const bool minors_requested = o.method != "sampling";
        bool minors_ran = false;
        if (minors_requested) {
            try {
                combine("minors", locder_minor_constraints(alg, der));
                minors_ran = true;
            } catch (const MethodError& e) {
                out_ << "minors: " << e.what() << "; falling back to sampling\n";
                report_.verdict["methods"]["minors"] = {{"verdict", "INAPPLICABLE"}};
            }
        }
        if (o.method != "minors" || !minors_ran) combine("sampling", locder_sampling_constraints(alg, der));

        const LocDerVerdict verdict = certify_locder(der, *outer);
        out_ << "verdict: " << tag_name(verdict.tag) << "\n";
        report_.verdict["verdict"] = tag_name(verdict.tag);
        report_.verdict["outer_dim"] = outer->size();
        if (verdict.witness) {
            out_ << "witness in outer approximation but not in Der:\n" << render_matrix(*verdict.witness);
            report_.verdict["witness"] = io::matrix_to_json(*verdict.witness);
        }
        if (verdict.tag != LocDerVerdict::Tag::Equal) report_.exit_code = kVerificationFailure;
    }

    void aut_verify(const Options& o) {
        const StructureTensor alg = load(o.algebra_path);
        const Matrix m = map_argument(o);
        const auto violation = aut_check(alg, m);
        if (!violation) {
            out_ << "AUTOMORPHISM\n";
            report_.verdict["verdict"] = "AUTOMORPHISM";
            return;
        }
        report_.exit_code = kVerificationFailure;
        report_.verdict["verdict"] = "NOT_AUTOMORPHISM";
        if (violation->singular) {
            out_ << "NOT_AUTOMORPHISM: map is singular\n";
            report_.verdict["singular"] = true;
        } else {
            out_ << "NOT_AUTOMORPHISM: phi(e" << violation->i + 1 << " e" << violation->j + 1 << ") != phi(e"
                 << violation->i + 1 << ") phi(e" << violation->j + 1 << ")\n";
            report_.verdict["pair"] = {violation->i + 1, violation->j + 1};
        }
    }

    void aut_family_certify(const Options& o) {
        StructureTensor alg = kantor_w2();
        if (!o.algebra_path.empty()) alg = load(o.algebra_path);
        if (alg.dim() > 8) throw InputError("the automorphism family acts on W(2) and its leading subalgebras");
        const FamilyCertificate cert = family_verify_symbolic(alg, leading_block(aut_family_symbolic(), alg.dim()));
        out_ << "checked " << cert.checked << " residual polynomials in (a, b); " << cert.nonzero.size()
             << " nonzero\n";
        json nonzero = json::array();
        for (const auto& r : cert.nonzero) {
            const std::string poly = r.residual.str({"a", "b"});
            out_ << "  (e" << r.i + 1 << ", e" << r.j + 1 << ") coordinate " << r.k + 1 << ": " << poly << "\n";
            nonzero.push_back(json{{"i", r.i + 1}, {"j", r.j + 1}, {"k", r.k + 1}, {"residual", poly}});
        }
        report_.verdict = {{"checked", cert.checked}, {"nonzero", nonzero}};
        report_.verdict["verdict"] = cert.nonzero.empty() ? "CERTIFIED" : "FAILED";
        if (!cert.nonzero.empty()) report_.exit_code = kVerificationFailure;
    }

    void locaut(const Options& o) {
        const StructureTensor alg = load(o.algebra_path);
        report_.inputs["matrix"] = o.matrix_path;
        const AutVerdict verdict = local_aut_detect(alg, io::load_matrix(o.matrix_path));
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, IsAutomorphism>) {
                    out_ << "AUTOMORPHISM a = " << v.params.a() << ", b = " << v.params.b() << "\n";
                    report_.verdict = {{"verdict", "AUTOMORPHISM"}, {"params", params_to_json(v.params)}};
                } else if constexpr (std::is_same_v<T, NotAutomorphism>) {
                    out_ << "NOT_AUTOMORPHISM: " << v.reason << "\n";
                    report_.verdict = {{"verdict", "NOT_AUTOMORPHISM"}, {"column", v.column + 1}, {"reason", v.reason}};
                    report_.exit_code = kVerificationFailure;
                } else {
                    out_ << "NOT_IN_FAMILY: " << v.relation << "\n";
                    report_.verdict = {{"verdict", "NOT_IN_FAMILY"}, {"relation", v.relation}};
                    report_.exit_code = kVerificationFailure;
                }
            },
            verdict);
    }

    void twolocal_der(const Options& o) {
        const StructureTensor alg = load(o.algebra_path);
        if (alg.dim() != 8) throw InputError("twolocal-der expects W(2) in the e-basis");
        const auto samples = load_samples(o);
        try {
            const auto result = twolocal_der_check(samples);
            if (const auto* c = std::get_if<Counterexample>(&result)) {
                report_counterexample(*c);
                return;
            }
            const auto& params = std::get<DerivationParams>(result);
            if (!leibniz_residual(alg, derivation_from_params(params)).empty()) {
                out_ << "recovered map is not a derivation of the given algebra\n";
                report_.verdict = {{"verdict", "NOT_DERIVATION"}, {"params", params_to_json(params)}};
                report_.exit_code = kVerificationFailure;
                return;
            }
            out_ << "DERIVATION alpha = " << params.alpha << ", beta = " << params.beta << " (" << samples.size()
                 << " samples consistent)\n";
            report_.verdict = {{"verdict", "DERIVATION"}, {"params", params_to_json(params)}};
        } catch (const RecoveryError& e) {
            recovery_failed(e);
        }
    }

    void twolocal_aut(const Options& o) {
        const StructureTensor alg = load(o.algebra_path);
        if (alg.dim() != 8) throw InputError("twolocal-aut expects W(2) in the e-basis");
        const auto samples = load_samples(o);
        try {
            const auto result = twolocal_aut_check(samples);
            if (const auto* c = std::get_if<Counterexample>(&result)) {
                report_counterexample(*c);
                return;
            }
            const auto& params = std::get<AutParams>(result);
            if (aut_check(alg, aut_family(params))) {
                out_ << "recovered map is not an automorphism of the given algebra\n";
                report_.verdict = {{"verdict", "NOT_AUTOMORPHISM"}, {"params", params_to_json(params)}};
                report_.exit_code = kVerificationFailure;
                return;
            }
            out_ << "AUTOMORPHISM a = " << params.a() << ", b = " << params.b() << " (" << samples.size()
                 << " samples consistent)\n";
            report_.verdict = {{"verdict", "AUTOMORPHISM"}, {"params", params_to_json(params)}};
        } catch (const RecoveryError& e) {
            recovery_failed(e);
        }
    }

private:
    StructureTensor load(const std::string& path) {
        report_.inputs["algebra"] = path;
        return io::load_algebra(path);
    }

    std::vector<MapSample> load_samples(const Options& o) {
        report_.inputs["samples"] = o.samples_path;
        return io::load_samples(o.samples_path);
    }

    Matrix map_argument(const Options& o) {
        if (o.matrix_path.empty() == o.family.empty()) throw InputError("give exactly one of --matrix or --family");
        if (!o.matrix_path.empty()) {
            report_.inputs["matrix"] = o.matrix_path;
            return io::load_matrix(o.matrix_path);
        }
        const AutParams p = io::parse_aut_params(o.family);
        report_.inputs["family"] = params_to_json(p);
        return aut_family(p);
    }

    void report_counterexample(const Counterexample& c) {
        out_ << "COUNTEREXAMPLE at sample " << c.sample_index << ": x = " << render_combination(c.x, default_labels(c.x.dim()))
             << ", expected " << render_combination(c.expected, default_labels(c.x.dim())) << ", observed "
             << render_combination(c.observed, default_labels(c.x.dim())) << "\n";
        report_.verdict = {{"verdict", "COUNTEREXAMPLE"}, {"counterexample", counterexample_to_json(c)}};
        report_.exit_code = kVerificationFailure;
    }

    void recovery_failed(const RecoveryError& e) {
        out_ << "UNRECOVERABLE: " << e.what() << "\n";
        report_.verdict = {{"verdict", "UNRECOVERABLE"}, {"message", e.what()}};
        report_.exit_code = kVerificationFailure;
    }

    RunReport& report_;
    std::ostream& out_;
};

std::filesystem::path resolve_report_path(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative())
        if (const char* dir = std::getenv("CONSERVKIT_REPORT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
    return p;
}

}  // namespace

std::string RunReport::dump() const {
    const json j{{"command", command}, {"inputs", inputs}, {"verdict", verdict}, {"exit_code", exit_code}};
    return j.dump(2) + "\n";
}

RunReport run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunReport report;
    Options o;

    CLI::App app{"Exact verification toolkit for the conservative algebra W(2)", "conservkit"};
    app.require_subcommand(1);
    app.add_option("--report", o.report_path, "Also write a JSON report to this file");

    std::map<std::string, std::function<void(Runner&)>> handlers;
    auto add = [&](const char* name, const char* help, void (Runner::*fn)(const Options&)) {
        CLI::App* sub = app.add_subcommand(name, help);
        handlers[name] = [fn, &o](Runner& r) { (r.*fn)(o); };
        return sub;
    };

    auto* build = add("build-w", "Build W(n) from the Kantor product", &Runner::build_w);
    build->add_option("--n", o.n, "Dimension of the underlying space")->check(CLI::PositiveNumber);
    build->add_option("--fixed", o.fixed, "1-based index of the fixed vector");
    build->add_option("--basis", o.basis, "alpha or e (n = 2 only)")->check(CLI::IsMember({"alpha", "e"}));
    build->add_option("--out", o.out_path, "Output algebra file (stdout if omitted)");

    auto* table = add("table", "Render the multiplication table", &Runner::table);
    table->add_option("file", o.algebra_path)->required();
    table->add_option("--compare", o.compare, "Diff against the published W(2) table (value: paper)");
    table->add_option("--labels", o.labels, "Comma-separated basis labels");

    auto* sub = add("sub", "Restrict to a closed span of basis vectors", &Runner::sub);
    sub->add_option("file", o.algebra_path)->required();
    sub->add_option("--span", o.span, "e.g. 1..6 or 1,2,4")->required();
    sub->add_option("--out", o.out_path, "Output algebra file");

    auto* der = add("der", "Compute the derivation algebra", &Runner::der);
    der->add_option("file", o.algebra_path)->required();

    auto* locder = add("locder", "Certify that local derivations are derivations", &Runner::locder);
    locder->add_option("file", o.algebra_path)->required();
    locder->add_option("--method", o.method, "sampling, minors or both");

    auto* autv = add("aut-verify", "Check whether a linear map is an automorphism", &Runner::aut_verify);
    autv->add_option("file", o.algebra_path)->required();
    autv->add_option("--matrix", o.matrix_path, "Matrix file");
    autv->add_option("--family", o.family, "Family member, e.g. a=1/2,b=3");

    auto* certify = add("aut-family-certify", "Symbolically certify the automorphism family",
                        &Runner::aut_family_certify);
    certify->add_option("file", o.algebra_path, "Algebra file (default: derived W(2))");

    auto* locaut = add("locaut", "Detect whether a linear map is a local automorphism", &Runner::locaut);
    locaut->add_option("file", o.algebra_path)->required();
    locaut->add_option("--matrix", o.matrix_path, "Matrix file")->required();

    auto* tld = add("twolocal-der", "Check sampled 2-local derivation data", &Runner::twolocal_der);
    tld->add_option("file", o.algebra_path)->required();
    tld->add_option("--samples", o.samples_path, "Sample-map file")->required();

    auto* tla = add("twolocal-aut", "Check sampled 2-local automorphism data", &Runner::twolocal_aut);
    tla->add_option("file", o.algebra_path)->required();
    tla->add_option("--samples", o.samples_path, "Sample-map file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return report;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        report.exit_code = kInputError;
        return report;
    }

    const CLI::App* chosen = app.get_subcommands().front();
    report.command = chosen->get_name();
    Runner runner(report, out);
    try {
        handlers.at(report.command)(runner);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        report.exit_code = kInputError;
    } catch (const ParameterError& e) {
        err << "parameter error: " << e.what() << "\n";
        report.exit_code = kInputError;
    } catch (const ProtocolError& e) {
        err << "protocol error: " << e.what() << "\n";
        report.exit_code = kInputError;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        report.exit_code = kInputError;
    }

    if (!o.report_path.empty()) {
        try {
            io::write_text_file(resolve_report_path(o.report_path), report.dump());
        } catch (const InputError& e) {
            err << "cannot write report: " << e.what() << "\n";
            if (report.exit_code == kSuccess) report.exit_code = kInputError;
        }
    }
    return report;
}

}  // namespace conservkit::cli
