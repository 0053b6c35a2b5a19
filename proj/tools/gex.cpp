// gex: groupoid-extension toolkit for transformational music theory.
//
// Subcommands: verify, act, interval, closure, enumerate, export-dot,
// check-voicing.  Exit codes: 0 success, 1 error, 2 partiality violation.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gex/affine_expr.hpp"
#include "gex/instance.hpp"
#include "gex/packaged.hpp"

using nlohmann::json;

namespace {

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string current;
    for (char ch : text) {
        if (ch == ',') {
            out.push_back(current);
            current.clear();
        } else {
            current += ch;
        }
    }
    if (!current.empty() || !text.empty()) out.push_back(current);
    return out;
}

// Morphism literal "(2, h:beta->M)" -> GMorphism.
gex::GMorphism parse_morphism(const gex::ExtensionCategory& E, const std::string& text) {
    std::string body = text;
    if (!body.empty() && body.front() == '(' && body.back() == ')')
        body = body.substr(1, body.size() - 2);
    auto comma = body.find(',');
    if (comma == std::string::npos)
        throw gex::ParseError("morphism literal must be \"(shift, label)\": " + text);
    auto trim = [](std::string s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        return s;
    };
    long long shift = 0;
    try {
        shift = std::stoll(trim(body.substr(0, comma)));
    } catch (const std::exception&) {
        throw gex::ParseError("morphism literal has a non-numeric shift: " + text);
    }
    return E.make(shift, E.shape().by_label(trim(body.substr(comma + 1))));
}

void emit(const json& j, bool as_json, const std::string& text) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

json report_to_json(const gex::VerifyReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks) {
        json entry{{"name", c.name}, {"pass", c.pass}};
        if (c.warning) entry["warning"] = true;
        if (!c.detail.empty()) entry["detail"] = c.detail;
        checks.push_back(entry);
    }
    return json{{"ok", report.ok()}, {"checks", checks}};
}

std::string report_to_text(const gex::VerifyReport& report) {
    std::ostringstream out;
    for (const auto& c : report.checks) {
        out << (c.pass ? "PASS" : c.warning ? "WARN" : "FAIL") << "  " << c.name;
        if (!c.detail.empty()) out << "  (" << c.detail << ")";
        out << "\n";
    }
    out << (report.ok() ? "verification OK\n" : "verification FAILED\n");
    return out.str();
}

int cmd_verify(const gex::LoadedInstance& inst, bool as_json) {
    gex::VerifyReport report = gex::run_verification(inst);
    emit(report_to_json(report), as_json, report_to_text(report));
    return report.ok() ? 0 : 1;
}

int cmd_act(const gex::LoadedInstance& inst, const std::string& op_text,
            const std::string& chord_text, bool as_json) {
    gex::Chord c = gex::parse_chord(*inst.registry, chord_text);
    gex::Chord image{gex::Residue(0, inst.registry->modulus()), c.type};
    if (!op_text.empty() && op_text.front() == '(') {
        image = inst.action->act(parse_morphism(*inst.extension, op_text), c);
    } else {
        const gex::PackagedOperator& op = inst.op(op_text);
        const gex::GMorphism& g = inst.action->variance() == gex::Variance::contravariant
                                      ? op.to_target(c.type)
                                      : op.from_source(c.type);
        image = inst.action->act(g, c);
    }
    emit(json{{"chord", gex::to_string(image)}}, as_json, gex::to_string(image) + "\n");
    return 0;
}

int cmd_interval(const gex::LoadedInstance& inst, const std::string& from_text,
                 const std::string& to_text, bool as_json) {
    gex::GMorphism g = inst.action->interval(gex::parse_chord(*inst.registry, from_text),
                                             gex::parse_chord(*inst.registry, to_text));
    emit(json{{"shift", g.z.value()}, {"morphism", g.h.label}, {"literal", gex::to_string(g)}},
         as_json, gex::to_string(g) + "\n");
    return 0;
}

int cmd_closure(const gex::LoadedInstance& inst, const std::vector<std::string>& names,
                bool as_json) {
    std::vector<gex::PackagedOperator> gens;
    for (const auto& name : names) gens.push_back(inst.op(name));
    gex::GeneratedGroup G = gex::generate_group(*inst.action, gens);
    const long long n = inst.registry->modulus();
    const long long m = static_cast<long long>(inst.registry->classes().size());
    gex::GroupAnalysis a = gex::analyze_group(G, n, m);
    gex::DihedralCertificate dihedral = gex::dihedral_certificate(G);
    gex::WreathCertificate wreath = gex::wreath_certificate(G, n, m);

    json j{{"order", a.order},
           {"abelian", a.abelian},
           {"cyclic", a.cyclic},
           {"type_blocks_preserved", a.type_blocks_preserved}};
    if (a.invariants) j["invariant_factors"] = a.invariants->factors;
    if (a.type_blocks_preserved) {
        j["kernel_order"] = a.kernel_order;
        j["block_image_order"] = a.quotient_order;
    }
    j["certificates"] = {
        {"cyclic", a.cyclic},
        {"dihedral", json{{"ok", dihedral.ok}, {"k", dihedral.k}}},
        {"wreath",
         json{{"ok", wreath.ok},
              {"n", n},
              {"m", m},
              {"failed_clause", wreath.failed_clause}}},
    };
    std::ostringstream text;
    text << "order " << a.order << (a.abelian ? ", abelian" : ", nonabelian")
         << (a.cyclic ? ", cyclic" : "") << "\n";
    if (a.invariants) {
        text << "invariant factors (";
        for (std::size_t i = 0; i < a.invariants->factors.size(); ++i)
            text << (i ? "," : "") << a.invariants->factors[i];
        text << ")\n";
    }
    text << "dihedral certificate: " << (dihedral.ok ? "true" : "false");
    if (dihedral.ok) text << " (k=" << dihedral.k << ")";
    text << "\n";
    text << "wreath certificate Z_" << n << " wr S_" << m << ": "
         << (wreath.ok ? "true" : "false");
    if (!wreath.ok && !wreath.failed_clause.empty()) text << " (" << wreath.failed_clause << ")";
    text << "\n";
    emit(j, as_json, text.str());
    return 0;
}

int cmd_enumerate(long long n, long long m, bool trivial_only, bool as_json) {
    std::vector<gex::ExtensionClass> classes =
        gex::enumerate_group_extensions(n, m, trivial_only);
    json list = json::array();
    std::ostringstream text;
    text << classes.size() << " isomorphism class(es) of extensions of Z_" << n << " by Z_" << m
         << (trivial_only ? " (trivial action only)" : "") << "\n";
    for (const auto& cls : classes) {
        json entry{{"order", cls.group_order}, {"abelian", cls.abelian}};
        if (cls.invariants) entry["invariant_factors"] = cls.invariants->factors;
        json orders = json::object();
        for (const auto& [ord, count] : cls.order_multiset)
            orders[std::to_string(ord)] = count;
        entry["element_orders"] = orders;
        entry["witness"] = {{"action_multiplier", cls.action_multiplier},
                            {"cocycle_row", cls.cocycle_row}};
        list.push_back(entry);
        text << "  order " << cls.group_order << (cls.abelian ? ", abelian" : ", nonabelian");
        if (cls.invariants) {
            text << ", invariant factors (";
            for (std::size_t i = 0; i < cls.invariants->factors.size(); ++i)
                text << (i ? "," : "") << cls.invariants->factors[i];
            text << ")";
        }
        text << "  [witness: action " << cls.action_multiplier << "]\n";
    }
    emit(json{{"n", n}, {"m", m}, {"classes", list}}, as_json, text.str());
    return 0;
}

int cmd_export_dot(const gex::LoadedInstance& inst, const std::vector<std::string>& names,
                   const std::string& out_path) {
    gex::ChordIndexing ix(*inst.registry);
    std::ostringstream dot;
    dot << "digraph gex {\n";
    for (std::size_t pt = 0; pt < ix.points(); ++pt)
        dot << "  n" << pt << " [label=\"" << gex::to_string(ix.chord(pt)) << "\"];\n";
    for (const auto& name : names) {
        gex::PermutationRep p = gex::permutation_rep(*inst.action, inst.op(name));
        for (std::size_t pt = 0; pt < ix.points(); ++pt)
            dot << "  n" << pt << " -> n" << p.img[pt] << " [label=\"" << name << "\"];\n";
    }
    dot << "}\n";
    if (out_path.empty() || out_path == "-") {
        std::cout << dot.str();
    } else {
        std::ofstream out(out_path);
        if (!out) throw gex::Error("cannot open output file " + out_path);
        out << dot.str();
        if (!out) throw gex::Error("write failed: " + out_path);
    }
    return 0;
}

int cmd_check_voicing(const gex::LoadedInstance& inst, const std::string& literal,
                      const std::string& compare_name, bool as_json) {
    gex::AffineTripleMap map = gex::parse_affine_map(literal);
    const long long n = inst.registry->modulus();
    bool equivariant = gex::check_equivariance(map, n);
    if (!equivariant) {
        emit(json{{"equivariant", false}}, as_json,
             "map is not equivariant (a matrix row does not sum to 1 mod " + std::to_string(n) +
                 ")\n");
        return 1;
    }
    gex::RootLaw law = gex::root_law_of(*inst.registry, map);
    json rows = json::object();
    std::ostringstream text;
    text << "equivariant; root law:\n";
    for (const auto& [from, entry] : law.rows) {
        rows[from] = {{"to", entry.target}, {"shift", entry.shift.value()}};
        text << "  " << from << " -> (" << entry.target << ", " << entry.shift.value() << ")\n";
    }
    for (const auto& t : law.unclassifiable) {
        rows[t] = nullptr;
        text << "  " << t << " -> unclassifiable image\n";
    }
    json j{{"equivariant", true}, {"consistent", law.consistent}, {"root_law", rows}};
    if (!compare_name.empty()) {
        auto it = inst.spec.operators.find(compare_name);
        if (it == inst.spec.operators.end())
            throw gex::Error("unknown operator " + compare_name);
        json mismatches = json::array();
        for (const auto& [from, arrow] : it->second.law.arrows) {
            auto row = law.rows.find(from);
            long long declared = gex::Residue::normalize(arrow.shift, n);
            bool same = row != law.rows.end() && row->second.target == arrow.target &&
                        row->second.shift.value() == declared;
            if (!same) {
                json mismatch{{"type", from},
                              {"declared", {{"to", arrow.target}, {"shift", declared}}}};
                if (row != law.rows.end())
                    mismatch["formula"] = {{"to", row->second.target},
                                           {"shift", row->second.shift.value()}};
                mismatches.push_back(mismatch);
                text << "  MISMATCH on " << from << ": declared (" << arrow.target << ", "
                     << declared << ")";
                if (row != law.rows.end())
                    text << ", formula gives (" << row->second.target << ", "
                         << row->second.shift.value() << ")";
                text << "\n";
            }
        }
        j["compared_to"] = compare_name;
        j["matches_declared"] = mismatches.empty();
        j["mismatches"] = mismatches;
        if (mismatches.empty()) text << "matches declared operator " << compare_name << "\n";
    }
    emit(j, as_json, text.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"groupoid-extension toolkit for transformational music theory"};
    app.require_subcommand(1);

    std::string instance_name = "MAlphaBeta";
    std::string ops_csv, chord1, chord2, op_text, out_path, map_literal, compare_name;
    bool as_json = false, trivial_only = false;
    long long enum_n = 12, enum_m = 2;

    auto add_common = [&](CLI::App* cmd, bool needs_instance = true) {
        if (needs_instance)
            cmd->add_option("--instance", instance_name, "preset name (MAlphaBeta, Mm) or JSON path");
        cmd->add_flag("--json", as_json, "emit a JSON report");
        return cmd;
    };

    auto* verify = add_common(app.add_subcommand("verify", "run the verification suite"));

    auto* act = add_common(app.add_subcommand("act", "apply an operator or morphism to a chord"));
    act->add_option("--op", op_text, "operator name or morphism literal \"(shift, label)\"")
        ->required();
    act->add_option("--chord", chord1, "chord, e.g. 0M")->required();

    auto* interval = add_common(app.add_subcommand("interval", "the unique morphism between two chords"));
    interval->add_option("--chord", chord1, "source then target chord")
        ->expected(2)
        ->required()
        ->each([&chord1, &chord2, first = true](const std::string& v) mutable {
            (first ? chord1 : chord2) = v;
            first = false;
        });

    auto* closure = add_common(app.add_subcommand("closure", "group closure with certificates"));
    closure->add_option("--ops", ops_csv, "comma-separated operator names")->required();

    auto* enumerate = add_common(
        app.add_subcommand("enumerate", "isomorphism classes of extensions of Z_n by Z_m"), false);
    enumerate->add_option("--n", enum_n, "fiber order")->required();
    enumerate->add_option("--m", enum_m, "quotient order")->required();
    enumerate->add_flag("--trivial-action", trivial_only, "restrict to the trivial action");

    auto* export_dot = add_common(app.add_subcommand("export-dot", "chord network as a DOT graph"));
    export_dot->add_option("--ops", ops_csv, "comma-separated operator names (may be empty)");
    export_dot->add_option("--out", out_path, "output path (default stdout)");

    auto* check_voicing =
        add_common(app.add_subcommand("check-voicing", "analyze an affine voicing map"));
    check_voicing->add_option("--map", map_literal, "affine map literal, e.g. \"z+2,x-1,y-2\"")
        ->required();
    check_voicing->add_option("--name", compare_name, "declared operator to compare against");

    CLI11_PARSE(app, argc, argv);

    try {
        if (enumerate->parsed()) return cmd_enumerate(enum_n, enum_m, trivial_only, as_json);
        gex::LoadedInstance inst = gex::load_instance_by_name(instance_name);
        if (verify->parsed()) return cmd_verify(inst, as_json);
        if (act->parsed()) return cmd_act(inst, op_text, chord1, as_json);
        if (interval->parsed()) return cmd_interval(inst, chord1, chord2, as_json);
        if (closure->parsed()) return cmd_closure(inst, split_csv(ops_csv), as_json);
        if (export_dot->parsed())
            return cmd_export_dot(inst, ops_csv.empty() ? std::vector<std::string>{}
                                                        : split_csv(ops_csv),
                                  out_path);
        if (check_voicing->parsed())
            return cmd_check_voicing(inst, map_literal, compare_name, as_json);
    } catch (const gex::PartialityViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
