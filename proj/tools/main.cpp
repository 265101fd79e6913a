#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "microloc/localfourier.hpp"
#include "microloc/padic.hpp"
#include "microloc/parse.hpp"
#include "microloc/polygon.hpp"

using namespace microloc;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1";

std::string str(long v) { return std::to_string(v); }

Json slopes_json(const SlopeMultiset& s) {
    Json out = Json::array();
    for (const auto& e : s.entries) out.push_back({{"slope", e.slope.to_string()}, {"multiplicity", str(e.multiplicity)}});
    return out;
}

Json matrix_json(const LaurentMatrix& m) {
    Json out = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(x.to_string());
        out.push_back(r);
    }
    return out;
}

Json module_json(const MicroModule& M) {
    return {{"dimension", str(M.dimension())}, {"basis", M.basis}, {"connection", matrix_json(M.A)}};
}

Json remainders_json(const std::vector<LaurentScalarTrunc<Rational>>& R) {
    Json out = Json::array();
    for (const auto& r : R) out.push_back(r.to_string());
    return out;
}

struct Options {
    bool json = false;
    long depth = 12;
    int zprec = 32;
    long degree_bound = 8;
    std::vector<std::string> operators;
    std::string point;
    std::string flavor;
    long q = 2;
    unsigned long p = 3;
    std::optional<unsigned long> fourier_padic;
    std::string padic_action;
    bool certificate = false;
};

MicroPrecision micro_prec(const Options& o) { return {o.depth, o.zprec}; }

void need(const Options& o, std::size_t n, const std::string& cmd) {
    if (o.operators.size() != n)
        throw std::invalid_argument(cmd + " takes " + std::to_string(n) + " operator" + (n == 1 ? "" : "s"));
}

Json cmd_parse(const Options& o) {
    need(o, 1, "parse");
    const WeylQ P = parse_operator(o.operators[0]);
    return {{"normal_form", P.to_string()}, {"order", str(P.order())}, {"max_degree", str(P.max_degree())}};
}

Json cmd_mul(const Options& o) {
    need(o, 2, "mul");
    return {{"product", (parse_operator(o.operators[0]) * parse_operator(o.operators[1])).to_string()}};
}

Json cmd_fourier(const Options& o) {
    need(o, 1, "fourier");
    if (o.fourier_padic) {
        const auto P = parse_operator_padic(o.operators[0], *o.fourier_padic);
        return {{"transform", "padic"}, {"p", str(static_cast<long>(*o.fourier_padic))}, {"fourier", padic_fourier(P, *o.fourier_padic).to_string()}};
    }
    return {{"transform", "formal"}, {"fourier", fourier(parse_operator(o.operators[0])).to_string()}};
}

Json cmd_analyze(const Options& o) {
    need(o, 1, "analyze");
    const WeylQ P = parse_operator(o.operators[0]);
    const auto prof = singularity_profile(P);
    Json pts = Json::array();
    for (const auto& pt : prof.points)
        pts.push_back({{"c", pt.c.to_string()}, {"multiplicity", str(pt.multiplicity)}, {"slopes", slopes_json(slopes_at(P, pt.c))}});
    return {{"operator", P.to_string()},
            {"order", str(P.order())},
            {"dhat", str(prof.dhat)},
            {"deg_ad", str(prof.deg_ad)},
            {"nu_inf", str(prof.nu_inf)},
            {"singular_points", pts},
            {"slopes_at_infinity", slopes_json(slopes_at_infinity(P))},
            {"fourier", fourier(P).to_string()},
            {"fourier_slopes_at_infinity", slopes_json(slopes_at_infinity(fourier(P)))}};
}

Json cmd_microlocalize(const Options& o) {
    need(o, 1, "microlocalize");
    const WeylQ P = parse_operator(o.operators[0]);
    if (o.point == "inf") return {{"point", "inf"}, {"module", module_json(microlocalize_at_infinity(P, micro_prec(o)))}};
    const Rational c = Rational::parse(o.point);
    return {{"point", c.to_string()}, {"module", module_json(microlocalize(P, c, micro_prec(o)))}};
}

Json cmd_stationary(const Options& o) {
    need(o, 1, "stationary-phase");
    const auto r = stationary_phase(parse_operator(o.operators[0]), micro_prec(o), o.certificate, o.degree_bound);
    Json dims = Json::array();
    for (const auto& d : r.dimensions) dims.push_back({{"c", d.c.to_string()}, {"dimension", str(d.dimension)}});
    Json out = {{"dhat", str(r.profile.dhat)},
                {"dimensions", dims},
                {"nu_inf", str(r.nu_inf)},
                {"ledger", {{"dhat", str(r.profile.dhat)}, {"sum_m", str(r.sum_m)}, {"nu_inf", str(r.nu_inf)}, {"ok", r.ledger_ok}}},
                {"fourier_slopes", slopes_json(r.slopes)},
                {"partition",
                 {{"below_one", str(r.below_one)},
                  {"equal_one", str(r.equal_one)},
                  {"above_one", str(r.above_one)},
                  {"m_zero", str(r.m_zero)},
                  {"m_nonzero", str(r.m_nonzero)},
                  {"ok", r.partition_ok}}}};
    if (r.certificate) {
        const auto& c = *r.certificate;
        out["certificate"] = {{"A_germ", matrix_json(c.A_germ)},     {"A_local", matrix_json(c.A_local)},
                              {"B", matrix_json(c.B)},               {"residual_zero", c.residual_zero},
                              {"residual_floor", str(c.residual_floor)}, {"preimages_consistent", c.preimages_consistent},
                              {"preimages_skipped", str(c.preimages_skipped)}};
    }
    return out;
}

Json cmd_divide(const Options& o, Json& diagnostics) {
    need(o, 2, "divide");
    WeylQ G = parse_operator(o.operators[0]), F = parse_operator(o.operators[1]);
    Flavor<Rational> fl;
    if (o.flavor == "inf") {
        fl = Flavor<Rational>::inf_inf();
        // (inf,inf) needs operators in K[t^-1]<dt>
        const long kg = G.max_degree(), kf = F.max_degree();
        G = G.left_shift(-kg);
        F = F.left_shift(-kf);
        if (kg != 0 || kf != 0) diagnostics.push_back("normalized by t^-" + str(kg) + " and t^-" + str(kf));
    } else if (o.flavor == "inf0") {
        fl = Flavor<Rational>::inf_zero();
    } else {
        fl = Flavor<Rational>::finite(Rational::parse(o.flavor));
    }
    const auto eG = embed_weyl(G, fl, o.depth, o.zprec);
    const auto eF = embed_weyl(F, fl, o.depth, o.zprec);
    const auto res = micro_divide(eG, eF);
    return {{"flavor", fl.name()},
            {"dividend", eG.to_string()},
            {"divisor", eF.to_string()},
            {"m", str(res.m)},
            {"quotient", res.quotient.to_string()},
            {"remainders", remainders_json(res.remainders)}};
}

Json cmd_ramify(const Options& o) {
    need(o, 1, "ramify");
    const WeylQ P = parse_operator(o.operators[0]);
    const WeylQ R = ramify(P, o.q);
    return {{"q", str(o.q)},
            {"ramified", R.to_string()},
            {"slopes_at_zero", slopes_json(slopes_at_zero(P))},
            {"ramified_slopes_at_zero", slopes_json(slopes_at_zero(R))}};
}

Json certificate_json(const NormCertificate& c) {
    Json entries = Json::array();
    for (const auto& e : c.entries)
        entries.push_back({{"a", e.query.a.to_string()},
                           {"b", e.query.b.to_string()},
                           {"v_quotient", e.v_quotient.to_string()},
                           {"bound", e.bound.to_string()},
                           {"top_attains", e.top_attains},
                           {"steps_checked", str(e.steps_checked)},
                           {"steps_ok", e.steps_ok},
                           {"lemma_ok", e.lemma_ok},
                           {"pass", e.pass}});
    return {{"entries", entries}, {"pass", c.passes()}};
}

Json cmd_padic(const Options& o) {
    const PadicContext ctx{o.p};
    const PadicPrecision prec{o.depth, o.zprec};
    Json out = {{"p", str(static_cast<long>(o.p))}, {"action", o.padic_action}};
    if (o.padic_action == "fourier") {
        need(o, 1, "padic fourier");
        out["fourier"] = padic_fourier(parse_operator_padic(o.operators[0], o.p), o.p).to_string();
    } else if (o.padic_action == "divide") {
        need(o, 2, "padic divide");
        const auto G = padic_embed(parse_operator_padic(o.operators[0], o.p), o.p, o.depth);
        const auto F = padic_embed(parse_operator_padic(o.operators[1], o.p), o.p, o.depth);
        const auto q = query_near_one(F, ctx);
        const auto res = padic_divide(G, F, ctx, q ? std::vector<NormQuery>{*q} : std::vector<NormQuery>{}, prec);
        Json rem = Json::array();
        for (const auto& r : res.division.remainders) rem.push_back(r.to_string());
        out["dominant"] = true;
        out["m"] = str(res.division.m);
        out["quotient"] = res.division.quotient.to_string();
        out["remainders"] = rem;
        out["certificate"] = certificate_json(res.certificate);
    } else {
        need(o, 1, "padic check");
        const auto r = padic_stationary_check(parse_operator_padic(o.operators[0], o.p), ctx, prec);
        Json roots = Json::array();
        for (const auto& [v, n] : r.root_valuations) roots.push_back({{"valuation", v.to_string()}, {"multiplicity", str(n)}});
        out["delta"] = str(r.delta);
        out["solvable"] = r.solvable;
        out["scaled"] = r.scaled.to_string();
        out["dominant"] = r.dominant;
        out["basis"] = r.basis;
        out["fourier"] = r.fourier.to_string();
        out["q"] = r.q.to_string("eta");
        out["q_matches_formula"] = r.q_matches_formula;
        out["nonzero_root_valuations"] = roots;
        out["unit"] = r.unit_ok;
        out["rank_micro"] = str(r.rank_micro);
        out["rank_fourier"] = str(r.rank_fourier);
        out["witnesses"] = r.witnesses_ok;
        if (r.division) out["division_certificate"] = certificate_json(r.division->certificate);
        out["ok"] = r.ok;
    }
    return out;
}

void print_text(const Json& j, const std::string& indent) {
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            std::cout << indent << key << ":\n";
            print_text(value, indent + "  ");
        } else if (value.is_array() && !value.empty() && value.front().is_object()) {
            std::cout << indent << key << ":\n";
            for (const auto& item : value) {
                std::cout << indent << "  -\n";
                print_text(item, indent + "    ");
            }
        } else if (value.is_string()) {
            std::cout << indent << key << ": " << value.get<std::string>() << "\n";
        } else {
            std::cout << indent << key << ": " << value.dump() << "\n";
        }
    }
}

int exit_code(const Error& e) {
    switch (e.category()) {
        case ErrorCategory::Parse: return 2;
        case ErrorCategory::Unsupported: return 3;
        case ErrorCategory::Precision: return 4;
        case ErrorCategory::Internal: return 1;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Microlocalization and local Fourier transforms of differential operators"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json, "Print a JSON report");
    app.add_option("--depth", o.depth, "Symbol orders kept below the top")->capture_default_str();
    app.add_option("--zprec", o.zprec, "Series precision of the coefficients")->capture_default_str();
    app.add_option("--degree-bound", o.degree_bound, "Degree bound for searches in the Weyl algebra")->capture_default_str();

    auto add = [&](const char* name, const char* help, const char* args) {
        auto* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        sub->add_option("operators", o.operators, args)->required();
        return sub;
    };
    add("parse", "Normal form of an operator", "operator");
    add("mul", "Product of two operators", "P Q");
    auto* fourier_cmd = add("fourier", "Fourier transform", "operator");
    fourier_cmd->add_option("--padic", o.fourier_padic, "Use the p-adic transform for this prime");
    add("analyze", "Singular points, slopes and Fourier transform", "operator");
    auto* micro_cmd = add("microlocalize", "Microlocalization at a point", "operator");
    micro_cmd->add_option("--point", o.point, "Rational point c or inf")->required();
    auto* sp_cmd = add("stationary-phase", "Local Fourier decomposition at infinity", "operator");
    sp_cmd->add_flag("--certificate", o.certificate, "Compute the conjugation certificate");
    auto* div_cmd = add("divide", "Division of microdifferential operators", "G F");
    div_cmd->add_option("--flavor", o.flavor, "c (rational point), inf or inf0")->required();
    auto* ram_cmd = add("ramify", "Pullback along t = z^q", "operator");
    ram_cmd->add_option("--q", o.q, "Ramification index")->required()->check(CLI::PositiveNumber);
    auto* padic_cmd = app.add_subcommand("padic", "p-adic checks over Q(pi)");
    padic_cmd->fallthrough();
    padic_cmd->add_option("--p", o.p, "Prime")->required()->check(CLI::Range(2UL, 1000UL));
    padic_cmd->add_option("action", o.padic_action, "check, divide or fourier")->required()->check(CLI::IsMember({"check", "divide", "fourier"}));
    padic_cmd->add_option("operators", o.operators, "operator(s)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const std::string command = app.get_subcommands().front()->get_name();
    Json envelope;
    envelope["command"] = command;
    Json input = {{"operators", o.operators}};
    if (command == "microlocalize") input["point"] = o.point;
    if (command == "divide") input["flavor"] = o.flavor;
    if (command == "ramify") input["q"] = str(o.q);
    if (command == "padic") input["p"] = str(static_cast<long>(o.p)), input["action"] = o.padic_action;
    if (command == "fourier" && o.fourier_padic) input["padic"] = str(static_cast<long>(*o.fourier_padic));
    if (command == "stationary-phase") input["certificate"] = o.certificate;
    envelope["input"] = input;
    envelope["precision"] = {{"depth", str(o.depth)}, {"zprec", str(o.zprec)}};
    envelope["result"] = nullptr;
    Json diagnostics = Json::array();
    int code = 0;
    try {
        Json result;
        if (command == "parse") result = cmd_parse(o);
        else if (command == "mul") result = cmd_mul(o);
        else if (command == "fourier") result = cmd_fourier(o);
        else if (command == "analyze") result = cmd_analyze(o);
        else if (command == "microlocalize") result = cmd_microlocalize(o);
        else if (command == "stationary-phase") result = cmd_stationary(o);
        else if (command == "divide") result = cmd_divide(o, diagnostics);
        else if (command == "ramify") result = cmd_ramify(o);
        else result = cmd_padic(o);
        envelope["result"] = result;
    } catch (const Error& e) {
        code = exit_code(e);
        diagnostics.push_back(e.what());
    } catch (const std::invalid_argument& e) {
        code = 2;
        diagnostics.push_back(std::string("usage: ") + e.what());
    } catch (const std::exception& e) {
        code = 1;
        diagnostics.push_back(std::string("internal: ") + e.what());
    }
    envelope["diagnostics"] = diagnostics;
    envelope["version"] = kVersion;

    if (o.json) {
        std::cout << envelope.dump(2) << "\n";
    } else if (code == 0) {
        print_text(envelope["result"], "");
        for (const auto& d : diagnostics) std::cerr << "note: " << d.get<std::string>() << "\n";
    } else {
        for (const auto& d : diagnostics) std::cerr << "error: " << d.get<std::string>() << "\n";
    }
    return code;
}
