#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "wick/diagram_export.hpp"
#include "wick/parser.hpp"

using namespace wick;

namespace {

struct Options {
    int dim = 4;
    std::string format = "text";
    std::string eta = "1";
    bool trace = false;
    std::string out;
};

ScalarCoeff eta_value(const std::string& s) {
    if (s == "1") return ScalarCoeff::one();
    if (s == "-1") return ScalarCoeff::integer(-1);
    if (s == "i") return ScalarCoeff::i();
    if (s == "-i") return ScalarCoeff::minus_i();
    throw std::invalid_argument("--eta must be one of 1, -1, i, -i");
}

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream os(opt.out);
        if (!os) throw std::invalid_argument("cannot open output file " + opt.out);
        os << text;
    }
}

std::string header() {
    return "# wickward report; distinct point labels are pairwise "
           "non-coincident\n";
}

OperatorExpr lower_operator(const std::string& text) {
    return OperatorExpr::from(lower(parse(text)));
}

std::vector<FieldPolynomial> lower_all(const std::vector<std::string>& exprs) {
    std::vector<FieldPolynomial> out;
    for (const auto& e : exprs) out.push_back(lower(parse(e)));
    return out;
}

void require_dim4(const Options& opt, const char* what) {
    if (opt.dim != 4)
        throw std::invalid_argument(std::string(what) +
                                    ": only defined in four spacetime dimensions");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wickward: Wick calculus and Ward identity checks for the "
                 "free complex scalar field"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config");

    Options opt;
    app.add_option("--dim", opt.dim, "spacetime dimension (default 4)")
        ->check(CLI::Range(3, 64));
    app.add_option("--format", opt.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--eta", opt.eta, "charge conjugation phase: 1, -1, i, -i")
        ->check(CLI::IsMember({"1", "-1", "i", "-i"}));
    app.add_flag("--trace", opt.trace, "include the rewrite pipeline stages");
    app.add_option("--out", opt.out, "write the report to a file (directory for "
                                     "export-diagrams)");

    std::vector<std::string> exprs;
    std::string contact = "y";
    int table_n = 6;
    int case1_m = 3;

    auto* c_expand = app.add_subcommand("expand", "canonical form of an expression");
    c_expand->add_option("expr", exprs)->required()->expected(1);

    auto* c_star = app.add_subcommand("star", "star product of two expressions");
    c_star->add_option("expr", exprs)->required()->expected(2);

    auto* c_comm = app.add_subcommand("commutator", "star commutator of two expressions");
    c_comm->add_option("expr", exprs)->required()->expected(2);

    auto* c_tprod = app.add_subcommand(
        "tproduct", "unrenormalized time-ordered product of local polynomials");
    c_tprod->add_option("expr", exprs)->required()->expected(-1);

    auto* c_vev = app.add_subcommand(
        "vev", "vacuum expectation value, e.g. of tproduct(...)");
    c_vev->add_option("expr", exprs)->required()->expected(1);

    auto* c_ward = app.add_subcommand("ward-check",
                                      "verify the Ward identity for the arguments");
    c_ward->add_option("args", exprs)->required()->expected(-1);
    c_ward->add_option("--y", contact, "contact point label (default y)");

    auto* c_furry = app.add_subcommand("furry-check",
                                       "charge-conjugation parity exclusion");
    c_furry->add_option("args", exprs)->required()->expected(-1);

    auto* c_charge = app.add_subcommand("charge-check",
                                        "charge-number conservation exclusion");
    c_charge->add_option("args", exprs)->required()->expected(-1);

    auto* c_scan = app.add_subcommand("anomaly-scan",
                                      "classify the anomaly structure of a tuple");
    c_scan->add_option("args", exprs)->required()->expected(-1);

    auto* c_case1 = app.add_subcommand("case1-report",
                                       "derivative-structure analysis for case I");
    c_case1->add_option("--m", case1_m, "symmetrized labels (default 3)")
        ->check(CLI::Range(2, 12));

    auto* c_table = app.add_subcommand("table1", "the case table at order n");
    c_table->add_option("--n", table_n, "number of arguments (default 6)")
        ->check(CLI::Range(4, 64));

    auto* c_dims = app.add_subcommand("dims", "mass dimensions of expressions");
    c_dims->add_option("expr", exprs)->required()->expected(-1);

    auto* c_export = app.add_subcommand(
        "export-diagrams", "full-contraction diagrams of a tuple (DOT + JSON)");
    c_export->add_option("args", exprs)->required()->expected(-1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_expand->parsed()) {
            emit(opt, header() + lower(parse(exprs[0])).str() + "\n");
        } else if (c_star->parsed()) {
            auto r = star_product(lower_operator(exprs[0]), lower_operator(exprs[1]));
            emit(opt, header() + r.str() + "\n");
        } else if (c_comm->parsed()) {
            auto r = star_commutator(lower_operator(exprs[0]), lower_operator(exprs[1]));
            emit(opt, header() + r.str() + "\n");
        } else if (c_tprod->parsed()) {
            auto r = unrenormalized_tproduct(lower_all(exprs));
            emit(opt, header() + r.str() + "\n");
        } else if (c_vev->parsed()) {
            auto args = parse_tproduct_args(exprs[0]);
            DistExpr r = vev(unrenormalized_tproduct(args));
            emit(opt, header() + r.str() + "\n");
        } else if (c_ward->parsed()) {
            require_dim4(opt, "ward-check");
            auto rep = check_mwi(lower_all(exprs), contact, true, opt.trace);
            if (opt.format == "json")
                emit(opt, ward_report_to_json(rep).dump(2) + "\n");
            else
                emit(opt, header() + ward_report_to_text(rep));
            return rep.verdict == Verdict::Verified ? 0 : 1;
        } else if (c_furry->parsed()) {
            auto check = furry_check(lower_all(exprs), eta_value(opt.eta));
            bool forced = check == ExclusionCheck::ForcedZero;
            std::string engine;
            if (forced) {
                DistExpr v = contraction_vev(lower_all(exprs));
                engine = v.is_zero() ? "confirmed by contraction enumeration"
                                     : "CONTRADICTED by contraction enumeration";
            }
            if (opt.format == "json") {
                Json j{{"schema_version", kReportSchemaVersion},
                       {"report", "furry-check"},
                       {"args", exprs},
                       {"result", forced ? "forced-zero" : "not-applicable"}};
                if (!engine.empty()) j["cross_check"] = engine;
                emit(opt, j.dump(2) + "\n");
            } else {
                emit(opt, header() +
                              (forced ? "forced-zero" : "not-applicable") +
                              (engine.empty() ? "" : " (" + engine + ")") + "\n");
            }
        } else if (c_charge->parsed()) {
            auto check = charge_conservation_check(lower_all(exprs));
            bool forced = check == ExclusionCheck::ForcedZero;
            std::string engine;
            if (forced) {
                DistExpr v = contraction_vev(lower_all(exprs));
                engine = v.is_zero() ? "confirmed by contraction enumeration"
                                     : "CONTRADICTED by contraction enumeration";
            }
            if (opt.format == "json") {
                Json j{{"schema_version", kReportSchemaVersion},
                       {"report", "charge-check"},
                       {"args", exprs},
                       {"result", forced ? "forced-zero" : "not-applicable"}};
                if (!engine.empty()) j["cross_check"] = engine;
                emit(opt, j.dump(2) + "\n");
            } else {
                emit(opt, header() +
                              (forced ? "forced-zero" : "not-applicable") +
                              (engine.empty() ? "" : " (" + engine + ")") + "\n");
            }
        } else if (c_scan->parsed()) {
            require_dim4(opt, "anomaly-scan");
            auto v = classify(lower_all(exprs));
            if (opt.format == "json")
                emit(opt, anomaly_verdict_to_json(v).dump(2) + "\n");
            else {
                std::string s = header();
                s += "omega = " + rational_str(v.omega_value) + "\n";
                s += "classification = " + anomaly_class_name(v.classification) + "\n";
                if (!v.notes.empty()) s += "notes: " + v.notes + "\n";
                switch (v.classification) {
                    case AnomalyClass::CaseI:
                    case AnomalyClass::CaseII:
                    case AnomalyClass::CaseIII:
                        s += "admissible u: " + admissible_u(v) + "\n";
                        break;
                    default: break;
                }
                emit(opt, s);
            }
        } else if (c_case1->parsed()) {
            auto rep = case1_reduce(case1_m);
            if (opt.format == "json")
                emit(opt, case1_report_to_json(rep).dump(2) + "\n");
            else {
                std::string s = header();
                s += "symmetrized labels m = " + std::to_string(rep.m) + "\n";
                s += "basis ranks: " + std::to_string(rep.basis1_rank) + " and " +
                     std::to_string(rep.basis2_rank) + ", joint " +
                     std::to_string(rep.joint_rank) + "\n";
                s += std::string("bases equivalent: ") +
                     (rep.bases_equivalent ? "yes" : "no") + "\n";
                s += std::string("round trip exact: ") +
                     (rep.round_trip_zero ? "yes" : "no") + "\n";
                s += std::string("swap invariance: group1 ") +
                     (rep.group1_swap_invariant ? "yes" : "no") + ", group2 " +
                     (rep.group2_swap_invariant ? "yes" : "no") + ", group3 " +
                     (rep.group3_swap_invariant ? "yes" : "no") + "\n";
                s += "constraint: " + rep.constraint +
                     (rep.constraint_verified ? " (verified)" : " (NOT verified)") +
                     "\n";
                s += std::string("symmetrization partner annihilated: ") +
                     (rep.annihilation_verified ? "yes" : "no") + "\n";
                s += std::string("C4 divergence matches C2: ") +
                     (rep.c4_matches_c2_divergence ? "yes" : "no") + "\n";
                emit(opt, s);
            }
        } else if (c_table->parsed()) {
            require_dim4(opt, "table1");
            auto rows = table1(table_n);
            if (opt.format == "json")
                emit(opt, table1_to_json(rows).dump(2) + "\n");
            else {
                std::string s = header();
                for (const auto& r : rows) {
                    s += std::to_string(r.row) + "  " + r.pattern +
                         "  omega=" + rational_str(r.omega_value) + "  " +
                         anomaly_class_name(r.classification) + "\n";
                }
                s += "...  every further reduction has omega <= 0\n";
                emit(opt, s);
            }
        } else if (c_dims->parsed()) {
            std::string s = header();
            Json arr = Json::array();
            for (const auto& e : exprs) {
                auto p = lower(parse(e));
                Rational dim = mass_dimension(p, opt.dim);
                s += e + ": " + rational_str(dim) + "\n";
                arr.push_back(Json{{"expr", e}, {"dimension", rational_str(dim)}});
            }
            if (opt.format == "json")
                emit(opt, Json{{"schema_version", kReportSchemaVersion},
                               {"report", "dims"},
                               {"dimensions", arr}}
                              .dump(2) +
                          "\n");
            else
                emit(opt, s);
        } else if (c_export->parsed()) {
            auto args = lower_all(exprs);
            // expand polynomial arguments into monomial combinations
            std::vector<FieldMonomial> chosen(args.size());
            std::vector<std::vector<ContractionDiagram>> all;
            std::function<void(size_t)> rec = [&](size_t i) {
                if (i == args.size()) {
                    all.push_back(enumerate_full_contractions(chosen));
                    return;
                }
                for (const auto& m : args[i].terms) {
                    chosen[i] = m;
                    rec(i + 1);
                }
            };
            rec(0);
            Json bundle = Json::array();
            std::string dots;
            int k = 0;
            for (const auto& ds : all)
                for (const auto& d : ds) {
                    std::string name = "diagram" + std::to_string(k++);
                    dots += diagram_to_dot(d, name);
                    bundle.push_back(diagram_to_json(d));
                }
            if (!opt.out.empty()) {
                std::filesystem::create_directories(opt.out);
                int i = 0;
                for (const auto& ds : all)
                    for (const auto& d : ds) {
                        char fname[64];
                        std::snprintf(fname, sizeof fname, "diagram_%03d.dot", i);
                        std::ofstream os(std::filesystem::path(opt.out) / fname);
                        os << diagram_to_dot(d, "diagram" + std::to_string(i));
                        ++i;
                    }
                std::ofstream js(std::filesystem::path(opt.out) / "diagrams.json");
                js << bundle.dump(2) << "\n";
                std::cout << "wrote " << k << " diagrams to " << opt.out << "\n";
            } else {
                std::cout << dots << bundle.dump(2) << "\n";
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
