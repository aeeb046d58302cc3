#include "wick/diagram_export.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace wick {

namespace {

struct Bundle {
    DiagramEdge edge;
    int count = 0;
};

std::vector<Bundle> bundles_of(const ContractionDiagram& d) {
    std::vector<Bundle> out;
    size_t i = 0;
    while (i < d.edges.size()) {
        size_t j = i;
        while (j < d.edges.size() && d.edges[j] == d.edges[i]) ++j;
        out.push_back(Bundle{d.edges[i], static_cast<int>(j - i)});
        i = j;
    }
    return out;
}

std::string derivs_str(const std::vector<std::pair<Label, Index>>& derivs) {
    std::string s;
    for (const auto& [lab, ix] : derivs) {
        if (!s.empty()) s += " ";
        s += "d[" + ix + "]@" + lab;
    }
    return s;
}

}  // namespace

std::string diagram_to_dot(const ContractionDiagram& d, const std::string& name) {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    os << "  label=\"pairings " << d.multiplicity << ", multiplicity "
       << d.grouped_multiplicity << ", coefficient " << d.coefficient.str()
       << "\";\n";
    std::set<Label> vertices;
    for (const auto& e : d.edges) {
        vertices.insert(e.a);
        vertices.insert(e.b);
    }
    for (const auto& v : vertices) os << "  \"" << v << "\";\n";
    for (const auto& b : bundles_of(d)) {
        os << "  \"" << b.edge.a << "\" -- \"" << b.edge.b << "\" [kind=\"DF\""
           << ", derivs=\"" << derivs_str(b.edge.derivs) << "\""
           << ", multiplicity=" << b.count << "];\n";
    }
    os << "}\n";
    return os.str();
}

Json diagram_to_json(const ContractionDiagram& d) {
    Json j;
    std::set<Label> vertices;
    for (const auto& e : d.edges) {
        vertices.insert(e.a);
        vertices.insert(e.b);
    }
    j["vertices"] = std::vector<Label>(vertices.begin(), vertices.end());
    Json edges = Json::array();
    for (const auto& b : bundles_of(d)) {
        Json e;
        e["a"] = b.edge.a;
        e["b"] = b.edge.b;
        e["kind"] = "DF";
        Json ds = Json::array();
        for (const auto& [lab, ix] : b.edge.derivs)
            ds.push_back(Json{{"label", lab}, {"index", ix}});
        e["derivs"] = ds;
        e["multiplicity"] = b.count;
        edges.push_back(std::move(e));
    }
    j["edges"] = std::move(edges);
    j["pairings"] = d.multiplicity;
    j["multiplicity"] = d.grouped_multiplicity;
    j["coefficient"] = d.coefficient.str();
    return j;
}

Json diagrams_to_json(const std::vector<ContractionDiagram>& ds) {
    Json arr = Json::array();
    for (const auto& d : ds) arr.push_back(diagram_to_json(d));
    return arr;
}

Json ward_report_to_json(const MwiReport& rep) {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["report"] = "ward-check";
    j["assumption"] = "distinct point labels are pairwise non-coincident";
    j["args"] = rep.args;
    j["labels"] = rep.labels;
    j["contact_label"] = rep.contact;
    j["lhs"] = rep.lhs.str();
    j["rhs"] = rep.rhs.str();
    j["residual"] = rep.residual.str();
    j["verdict"] = verdict_name(rep.verdict);
    j["residual_contact_supported"] = rep.residual_contact_supported;
    j["free_index_sets_match"] = rep.index_sets_match;
    Json contacts = Json::array();
    for (const auto& c : rep.contacts) {
        Json cj;
        cj["at"] = c.at;
        cj["origin"] = c.origin;
        cj["coefficient"] = c.coefficient.str();
        if (c.deriv_index) cj["delta_derivative_index"] = *c.deriv_index;
        cj["tproduct_args"] = c.t_args;
        cj["tproduct_value"] = c.t_value.str();
        if (!c.diagrams.empty()) cj["diagrams"] = diagrams_to_json(c.diagrams);
        contacts.push_back(std::move(cj));
    }
    j["contact_terms"] = std::move(contacts);
    if (!rep.lhs_diagrams.empty())
        j["lhs_diagrams"] = diagrams_to_json(rep.lhs_diagrams);
    if (!rep.trace.empty()) {
        Json tr = Json::array();
        for (const auto& [stage, value] : rep.trace)
            tr.push_back(Json{{"stage", stage}, {"value", value}});
        j["trace"] = std::move(tr);
    }
    return j;
}

std::string ward_report_to_text(const MwiReport& rep) {
    std::ostringstream os;
    os << "ward-check (distinct point labels are pairwise non-coincident)\n";
    os << "args:";
    for (const auto& a : rep.args) os << " [" << a << "]";
    os << "\ncontact label: " << rep.contact << "\n";
    for (const auto& [stage, value] : rep.trace)
        os << "-- " << stage << ":\n   " << value << "\n";
    os << "lhs      = " << rep.lhs.str() << "\n";
    os << "rhs      = " << rep.rhs.str() << "\n";
    for (const auto& c : rep.contacts) {
        os << "contact at " << c.at << " (" << c.origin << "): coefficient "
           << c.coefficient.str();
        if (c.deriv_index) os << ", d[" << *c.deriv_index << "]@" << rep.contact
                              << " on the delta";
        os << "\n  t(";
        for (size_t i = 0; i < c.t_args.size(); ++i)
            os << (i ? ", " : "") << c.t_args[i];
        os << ") = " << c.t_value.str() << "\n";
        for (const auto& d : c.diagrams)
            os << "  diagram: multiplicity " << d.grouped_multiplicity << " ("
               << d.multiplicity << " pairings), coefficient "
               << d.coefficient.str() << "\n";
    }
    os << "residual = " << rep.residual.str() << "\n";
    os << "verdict  = " << verdict_name(rep.verdict) << "\n";
    return os.str();
}

Json anomaly_verdict_to_json(const AnomalyVerdict& v) {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["report"] = "anomaly-scan";
    j["args"] = v.args;
    j["omega"] = rational_str(v.omega_value);
    j["classification"] = anomaly_class_name(v.classification);
    j["currents"] = v.current_count;
    if (!v.notes.empty()) j["notes"] = v.notes;
    switch (v.classification) {
        case AnomalyClass::CaseI:
        case AnomalyClass::CaseII:
        case AnomalyClass::CaseIII:
            j["admissible_u"] = admissible_u(v);
            break;
        default: break;
    }
    return j;
}

Json table1_to_json(const std::vector<Table1Row>& rows) {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["report"] = "table1";
    Json arr = Json::array();
    for (const auto& r : rows) {
        Json rj;
        rj["row"] = r.row;
        rj["pattern"] = r.pattern;
        rj["args"] = r.args;
        rj["omega"] = rational_str(r.omega_value);
        rj["classification"] = anomaly_class_name(r.classification);
        rj["omega_nonpositive"] = r.omega_nonpositive;
        arr.push_back(std::move(rj));
    }
    j["rows"] = std::move(arr);
    j["cutoff"] = "every further reduction of the arguments has omega <= 0";
    return j;
}

Json case1_report_to_json(const Case1Report& rep) {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["report"] = "case1";
    j["symmetrized_labels"] = rep.m;
    j["basis1"] = rep.basis1_names;
    j["basis2"] = rep.basis2_names;
    j["basis1_rank"] = rep.basis1_rank;
    j["basis2_rank"] = rep.basis2_rank;
    j["joint_rank"] = rep.joint_rank;
    j["bases_equivalent"] = rep.bases_equivalent;
    j["round_trip_zero"] = rep.round_trip_zero;
    j["group1_swap_invariant"] = rep.group1_swap_invariant;
    j["group2_swap_invariant"] = rep.group2_swap_invariant;
    j["group3_swap_invariant"] = rep.group3_swap_invariant;
    j["constraint"] = rep.constraint;
    j["constraint_verified"] = rep.constraint_verified;
    j["symmetrization_partner_annihilated"] = rep.annihilation_verified;
    j["c4_divergence_matches_c2"] = rep.c4_matches_c2_divergence;
    return j;
}

}  // namespace wick
