// Command-line front end: reads JSON documents, dispatches to the decision
// procedures, prints a JSON verdict on stdout.
//
// Exit codes: 0 = yes/valid, 1 = no/refuted, 2 = input error,
//             3 = cap exceeded / undecided.

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "combsim/intpart.hpp"
#include "combsim/io.hpp"
#include "combsim/mapkit.hpp"
#include "combsim/pmetric.hpp"
#include "combsim/relcore.hpp"
#include "combsim/semigrp.hpp"
#include "combsim/simdec.hpp"

using combsim::io::json;

namespace {

constexpr int kYes = 0, kNo = 1, kInputError = 2, kUndecided = 3;

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

json rational_list(const std::vector<combsim::Rational>& vs) {
    json out = json::array();
    for (const auto& v : vs) out.push_back(combsim::to_string(v));
    return out;
}

int cmd_check_coherence(const std::string& file, const std::string& symbol) {
    const combsim::SymMapping phi = combsim::io::mapping_from_json(combsim::io::load_file(file));
    json out{{"verdict", ""}};
    if (!symbol.empty()) {
        const auto a0 = phi.alphabet().index_of(symbol);
        if (!a0) throw std::invalid_argument("symbol \"" + symbol + "\" is not in the alphabet");
        const auto v = combsim::is_coherent(phi, *a0);
        out["symbol"] = symbol;
        out["verdict"] = v ? "coherent" : "not_coherent";
        if (!v) {
            if (v.equivalence_failed) {
                out["refutation"] = "fiber is not an equivalence relation";
                out["axiom"] = combsim::to_string(v.equivalence.failed);
                out["witness"] = {v.equivalence.witness[0], v.equivalence.witness[1],
                                  v.equivalence.witness[2]};
            } else {
                out["refutation"] = "mapping is not constant on class products";
                out["witness"] = {v.quadruple[0], v.quadruple[1], v.quadruple[2], v.quadruple[3]};
            }
        }
        emit(out);
        return v ? kYes : kNo;
    }
    const auto point = combsim::coherence_point(phi);
    if (point) {
        out["verdict"] = "coherent";
        out["symbol"] = phi.alphabet().label(*point);
        emit(out);
        return kYes;
    }
    out["verdict"] = "not_coherent";
    out["refutation"] = "no coherence point";
    emit(out);
    return kNo;
}

int cmd_check_pseudometric(const std::string& file) {
    // parsed leniently so axiom violations become verdicts, not input errors
    const json j = combsim::io::load_file(file);
    if (combsim::io::kind_of(j) != "pseudometric")
        throw std::invalid_argument("expected kind \"pseudometric\"");
    const int n = j.at("n").get<int>();
    if (!j.contains("dist") || !j["dist"].is_array() || static_cast<int>(j["dist"].size()) != n)
        throw std::invalid_argument("distance table must be an n x n array");
    std::vector<combsim::Rational> dist(n * n);
    for (int x = 0; x < n; ++x) {
        if (static_cast<int>(j["dist"][x].size()) != n)
            throw std::invalid_argument("distance table must be an n x n array");
        for (int y = 0; y < n; ++y)
            dist[x * n + y] = combsim::parse_rational(j["dist"][x][y].get<std::string>());
    }
    const auto checked = combsim::Pseudometric::validate(combsim::GroundSet(n), std::move(dist));
    if (std::holds_alternative<combsim::MetricViolation>(checked)) {
        const auto& v = std::get<combsim::MetricViolation>(checked);
        emit({{"verdict", "invalid"},
              {"axiom", combsim::to_string(v.axiom)},
              {"witness", {v.x, v.y, v.z}}});
        return kNo;
    }
    const auto& d = std::get<combsim::Pseudometric>(checked);
    const bool metric = combsim::zero_relation(d) ==
                        combsim::BinaryRelation::diagonal(d.ground());
    emit({{"verdict", "valid"},
          {"metric", metric},
          {"discrete", combsim::is_discrete(d)},
          {"ptolemaic", static_cast<bool>(combsim::is_ptolemaic(d))},
          {"strongly_rigid", static_cast<bool>(combsim::is_strongly_rigid(d))}});
    return kYes;
}

int cmd_decide_class(const std::string& which, const std::string& file) {
    const combsim::SymMapping phi = combsim::io::mapping_from_json(combsim::io::load_file(file));
    combsim::PseudometricDecision dec;
    if (which == "pseudometric-similar")
        dec = combsim::pseudometric_similar(phi);
    else if (which == "metric-similar")
        dec = combsim::metric_similar(phi);
    else if (which == "discrete-similar")
        dec = combsim::discrete_similar(phi);
    else
        dec = combsim::strongly_rigid_similar(phi);
    json out{{"verdict", dec.yes ? "similar" : "not_similar"}};
    if (dec.yes) {
        out["class"] = combsim::to_string(dec.witness->cls);
        out["witness"] = {{"pseudometric", combsim::io::pseudometric_to_json(dec.witness->d)},
                          {"value_of_symbol", rational_list(dec.witness->value_of_symbol)}};
    } else {
        out["refutation"] = dec.refutation;
    }
    emit(out);
    return dec.yes ? kYes : kNo;
}

int cmd_decide_similar(const std::string& fileA, const std::string& fileB, long long max_nodes) {
    const auto phi = combsim::io::mapping_from_json(combsim::io::load_file(fileA));
    const auto psi = combsim::io::mapping_from_json(combsim::io::load_file(fileB));
    const auto res = combsim::decide_comb_similar(phi, psi, max_nodes);
    json out{{"stats", {{"nodes", res.nodes}}}};
    switch (res.outcome) {
        case combsim::SimOutcome::similar:
            out["verdict"] = "similar";
            out["witness"] = {{"g", res.witness->g}, {"f", res.witness->f}};
            emit(out);
            return kYes;
        case combsim::SimOutcome::not_similar:
            out["verdict"] = "not_similar";
            out["refutation"] = res.refutation;
            emit(out);
            return kNo;
        case combsim::SimOutcome::undecided:
            out["verdict"] = "undecided";
            out["refutation"] = res.refutation;
            emit(out);
            return kUndecided;
    }
    return kInputError;
}

std::vector<combsim::BinaryRelation> generators_from(const json& j) {
    const std::string kind = combsim::io::kind_of(j);
    if (kind == "mapping") return combsim::io::mapping_from_json(j).fibers();
    if (kind == "pseudometric")
        return combsim::io::pseudometric_from_json(j).as_sym_mapping().fibers();
    if (kind == "relation") return {combsim::io::relation_from_json(j)};
    throw std::invalid_argument("semigroup generate expects a mapping, pseudometric or relation");
}

int cmd_semigroup_generate(const std::string& file, int max_elements) {
    const auto closure = combsim::generate(generators_from(combsim::io::load_file(file)),
                                           max_elements);
    json out = combsim::io::semigroup_to_json(closure);
    const auto rep = combsim::structure(closure);
    out["structure"] = {{"identity", rep.identity ? json(*rep.identity) : json()},
                        {"zero", rep.zero ? json(*rep.zero) : json()},
                        {"idempotents", rep.idempotents}};
    emit(out);
    return kYes;
}

combsim::FiniteSemigroup semigroup_from(const json& j) {
    if (combsim::io::kind_of(j) == "semigroup") return combsim::io::semigroup_from_json(j);
    return combsim::generate(generators_from(j)).abstract();
}

int cmd_semigroup_classify(const std::string& file) {
    const auto s = semigroup_from(combsim::io::load_file(file));
    const auto cls = combsim::classify_discrete(s);
    const auto rep = combsim::structure(s);
    emit({{"class", combsim::to_string(cls)},
          {"order", s.order()},
          {"identity", rep.identity ? json(*rep.identity) : json()},
          {"zero", rep.zero ? json(*rep.zero) : json()}});
    return cls == combsim::DiscreteClass::other ? kNo : kYes;
}

int cmd_semigroup_h1(const std::string& file) {
    const auto s = semigroup_from(combsim::io::load_file(file));
    const auto v = combsim::h1_check(s);
    json out{{"verdict", v ? "member" : "not_member"}};
    if (!v) {
        out["failing_condition"] = v.failing_condition;
        out["refutation"] = v.witness;
    }
    emit(out);
    return v ? kYes : kNo;
}

int cmd_semigroup_rigid(const std::string& file) {
    const auto s = semigroup_from(combsim::io::load_file(file));
    const auto rep = combsim::rigid_structure_check(s);
    json out{{"verdict", rep.ok ? "rigid_structure" : "not_rigid_structure"},
             {"conditions", rep.conditions},
             {"order2_groups", static_cast<int>(rep.order2_groups.size())},
             {"core_size", static_cast<int>(rep.core.size())}};
    if (!rep.ok) out["refutation"] = rep.detail;
    emit(out);
    return rep.ok ? kYes : kNo;
}

int cmd_quotient(const std::string& file, int max_elements) {
    const auto d = combsim::io::pseudometric_from_json(combsim::io::load_file(file));
    const auto iso = combsim::quotient_iso(d, max_elements);
    const auto ident = combsim::metric_identification(d);
    emit({{"quotient", combsim::io::pseudometric_to_json(ident.quotient_metric)},
          {"projection", ident.projection},
          {"semigroup_order", iso.source.order()},
          {"iso", iso.mapping}});
    return kYes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact decision procedures for symmetric mappings, pseudometrics and "
                 "relation semigroups"};
    app.require_subcommand(1);
    int max_elements = 100000;
    long long max_nodes = 10'000'000;
    app.add_option("--max-elements", max_elements, "closure element cap");
    app.add_option("--max-nodes", max_nodes, "search node cap");

    std::string file, file2, symbol;

    auto* check = app.add_subcommand("check");
    check->require_subcommand(1);
    auto* coh = check->add_subcommand("coherence");
    coh->add_option("file", file)->required();
    coh->add_option("--symbol", symbol);
    auto* cpm = check->add_subcommand("pseudometric");
    cpm->add_option("file", file)->required();

    auto* decide = app.add_subcommand("decide");
    decide->require_subcommand(1);
    for (const char* name :
         {"pseudometric-similar", "metric-similar", "discrete-similar", "rigid-similar"})
        decide->add_subcommand(name)->add_option("file", file)->required();
    auto* sim = decide->add_subcommand("similar");
    sim->add_option("fileA", file)->required();
    sim->add_option("fileB", file2)->required();

    auto* sg = app.add_subcommand("semigroup");
    sg->require_subcommand(1);
    for (const char* name : {"generate", "classify", "h1", "rigid-structure"})
        sg->add_subcommand(name)->add_option("file", file)->required();

    auto* quot = app.add_subcommand("quotient");
    quot->add_option("file", file)->required();

    int count_n = 0;
    auto* count = app.add_subcommand("count");
    count->require_subcommand(1);
    for (const char* name : {"discrete-classes", "partitions"})
        count->add_subcommand(name)->add_option("n", count_n)->required();

    auto* hr = app.add_subcommand("hr-ratio");
    hr->add_option("n", count_n)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kInputError;
    }

    try {
        if (check->parsed()) {
            if (coh->parsed()) return cmd_check_coherence(file, symbol);
            return cmd_check_pseudometric(file);
        }
        if (decide->parsed()) {
            if (sim->parsed()) return cmd_decide_similar(file, file2, max_nodes);
            return cmd_decide_class(decide->get_subcommands().at(0)->get_name(), file);
        }
        if (sg->parsed()) {
            const std::string which = sg->get_subcommands().at(0)->get_name();
            if (which == "generate") return cmd_semigroup_generate(file, max_elements);
            if (which == "classify") return cmd_semigroup_classify(file);
            if (which == "h1") return cmd_semigroup_h1(file);
            return cmd_semigroup_rigid(file);
        }
        if (quot->parsed()) return cmd_quotient(file, max_elements);
        if (count->parsed()) {
            const std::string which = count->get_subcommands().at(0)->get_name();
            const combsim::BigInt c = which == "partitions"
                                          ? combsim::partition_count(count_n)
                                          : combsim::discrete_classes_count(count_n);
            std::cout << c.str() << '\n';
            return kYes;
        }
        if (hr->parsed()) {
            std::cout << combsim::hr_ratio(count_n) << '\n';
            return kYes;
        }
    } catch (const combsim::CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return kUndecided;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}
