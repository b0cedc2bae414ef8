#include "report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace eusys;
using namespace eusys::report;

namespace {

struct Options {
    unsigned long long seed = 1;
    std::string json_out;
    std::string group = "gsp4";
    long prime = 2;
    std::vector<long long> primes;
    std::string label, label2;
    int bound = 1;
    long long coeff_bound = 100;
    size_t samples = 200;
    std::string matrix_file;
    long long disc = -4;
    std::string modulus, modulus_n;
    size_t choice = 0;
    int k1 = 4, k2 = 3;
    long long p = 2;
    bool quick = false;
};

hecke::Group parse_group(const std::string& g)
{
    if (g == "gsp4") return hecke::Group::GSp4;
    if (g == "gl2") return hecke::Group::GL2;
    throw ConfigError("group must be gsp4 or gl2");
}

void require_prime(long ell)
{
    if (ell < 2 || !iq::detail::is_prime(ell)) throw ConfigError("--prime must be a prime");
}

Json label_json(const CartanLabel& l) { return l.v; }

Json matrix_json(const MatQ& m)
{
    Json rows = Json::array();
    auto s = m.to_strings();
    for (int i = 0; i < m.size(); ++i) {
        Json r = Json::array();
        for (int j = 0; j < m.size(); ++j) {
            std::string x = s[static_cast<size_t>(i * m.size() + j)];
            if (x.size() > 2 && x.substr(x.size() - 2) == "/1") x.resize(x.size() - 2);
            r.push_back(x);
        }
        rows.push_back(r);
    }
    return rows;
}

Json xpoly_json(const hecke::XPoly<SqrtPrimeExt>& p)
{
    Json j = Json::array();
    for (const auto& c : p) j.push_back(c.to_string());
    return j;
}

Json base_config(const Options& o, std::initializer_list<const char*> keys)
{
    Json c = Json::object();
    for (std::string k : keys) {
        if (k == "prime") c[k] = o.prime;
        if (k == "group") c[k] = o.group;
        if (k == "label") c[k] = o.label;
        if (k == "bound") c[k] = o.bound;
        if (k == "coeff_bound") c["bound"] = o.coeff_bound;
        if (k == "samples") c[k] = o.samples;
        if (k == "disc") c[k] = o.disc;
        if (k == "modulus") c[k] = o.modulus;
        if (k == "modulus_n") c[k] = o.modulus_n.empty() ? o.modulus : o.modulus_n;
        if (k == "k1") c[k] = o.k1;
        if (k == "k2") c[k] = o.k2;
        if (k == "p") c[k] = o.p;
    }
    return c;
}

Json computed(const std::string& cmd, const Options& o, Json config, Json result)
{
    return envelope(cmd, o.seed, std::move(config), {{"computed", true, Json::object()}}, std::move(result));
}

Json run_hecke(const std::string& sub, const Options& o)
{
    require_prime(o.prime);
    auto g = parse_group(o.group);
    auto lab = hecke::canonical_label(g, parse_label(o.label));
    Json cfg = base_config(o, {"group", "prime", "label"});
    if (sub == "decompose") {
        auto L = hecke::decompose_double_coset(g, o.prime, lab);
        Json reps = Json::array();
        for (const auto& r : L->reps) reps.push_back(matrix_json(r.mat(o.prime)));
        return computed("hecke decompose", o, cfg, {{"label", label_json(lab)}, {"cosets", L->reps.size()}, {"reps", reps}});
    }
    if (sub == "convolve") {
        auto lab2 = hecke::canonical_label(g, parse_label(o.label2));
        cfg["with"] = o.label2;
        auto c = hecke::convolve(hecke::HeckeOp::single(g, o.prime, lab), hecke::HeckeOp::single(g, o.prime, lab2));
        Json terms = Json::array();
        for (const auto& [l, m] : c.terms) terms.push_back({{"label", label_json(l)}, {"multiplicity", m.get_str()}});
        return computed("hecke convolve", o, cfg, {{"terms", terms}});
    }
    auto e = hecke::ps_eigenvalue(hecke::HeckeOp::single(g, o.prime, lab));
    return computed("hecke eigen", o, cfg, {{"label", label_json(lab)}, {"eigenvalue", e.to_string()}});
}

Json run_lfactor(const std::string& sub, const Options& o)
{
    require_prime(o.prime);
    Json cfg = base_config(o, {"prime"});
    hecke::Poly L = hecke::Poly::var(Var::lam), M = hecke::Poly::var(Var::mu), W = hecke::Poly::var(Var::om);
    if (sub == "spin") return computed("lfactor spin", o, cfg, {{"coefficients", xpoly_json(hecke::p_spin_poly(o.prime, L, M, W))}});
    if (sub == "nov") {
        auto p = hecke::p_nov_poly(o.prime, L, M, W, hecke::Poly::var(Var::ynu), hecke::Poly::var(Var::ymu));
        return computed("lfactor nov", o, cfg, {{"coefficients", xpoly_json(p)}});
    }
    if (sub == "check-factorization") return envelope("lfactor check-factorization", o.seed, cfg, {nov_factorization({o.prime})});
    return envelope("lfactor grading", o.seed, cfg, {multiplier_grading({o.prime})});
}

Json run_gejima(const std::string& sub, const Options& o)
{
    require_prime(o.prime);
    if (o.bound < 0) throw ConfigError("--bound must be non-negative");
    if (sub == "verify") {
        Json cfg = base_config(o, {"prime", "bound", "samples"});
        return envelope("gejima verify", o.seed, cfg, {gejima_partition(o.prime, o.bound, o.samples, o.seed)});
    }
    std::ifstream in(o.matrix_file);
    if (!in) throw ConfigError("cannot read matrix file " + o.matrix_file);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("matrix file: ") + e.what());
    }
    MatQ g = parse_matrix(j, o.prime);
    if (g.size() != 4 || !is_gsp4(g)) throw ConfigError("matrix must lie in GSp4(Q)");
    Json cfg = base_config(o, {"prime", "bound"});
    cfg["matrix"] = matrix_json(g);
    Check c{"reduce", false, Json::object()};
    try {
        auto r = gejima::gejima_reduce_detail(g, o.prime, o.bound);
        c.pass = true;
        c.detail = {{"mu_prime", r.pair.mu_p}, {"mu", r.pair.mu}, {"prefiltered", r.prefiltered}, {"orbit", r.orbit}};
    } catch (const gejima::NotFoundWithinBound& e) {
        c.detail = {{"error", e.what()}};
    }
    return envelope("gejima reduce", o.seed, cfg, {c});
}

Json run_rayclass(const Options& o)
{
    iq::QuadField K(o.disc);
    iq::RayClassGroup H(K, parse_modulus(K, o.modulus));
    return computed("rayclass", o, base_config(o, {"disc", "modulus"}), rayclass_json(H));
}

Json run_cm(const std::string& sub, const Options& o)
{
    if (o.coeff_bound < 1) throw ConfigError("--bound must be positive");
    if (sub == "qexp") {
        Json cfg = base_config(o, {"disc", "modulus", "coeff_bound"});
        cfg["choice"] = o.choice;
        auto psi = make_psi(o.disc, o.modulus, o.choice);
        auto f = cm::q_expansion(psi, o.coeff_bound);
        auto r = cm::verify_eigenform(f, psi);
        Json a = Json::array();
        for (long long n = 1; n <= o.coeff_bound; ++n) a.push_back(cyc_str(f.a[static_cast<size_t>(n)]));
        Check c{"eigenform", r.pass(), {{"multiplicativity", {r.mult_checked, r.mult_failed}},
                                         {"recurrence", {r.rec_checked, r.rec_failed}},
                                         {"prime_coefficients", {r.local_checked, r.local_failed}},
                                         {"failures", r.failures}}};
        return envelope("cm qexp", o.seed, cfg, {c}, {{"character", hecke_char_json(psi)}, {"level", f.level}, {"coefficients", a}});
    }
    Json cfg = base_config(o, {"disc", "modulus", "modulus_n", "coeff_bound"});
    FieldModulus fm{o.disc, o.modulus, o.modulus_n.empty() ? o.modulus : o.modulus_n};
    return envelope("cm phi", o.seed, cfg, {phi_property({fm}, o.coeff_bound)});
}

Json run_normrel(const std::string& sub, const Options& o)
{
    FieldModulus fm{o.disc, o.modulus, o.modulus_n.empty() ? o.modulus : o.modulus_n};
    if (sub == "identity") {
        if (o.primes.empty()) throw ConfigError("--prime is required");
        Json cfg = base_config(o, {"disc", "modulus", "modulus_n"});
        cfg["primes"] = o.primes;
        return envelope("normrel identity", o.seed, cfg, {norm_relation({{fm, o.primes}})});
    }
    if (o.primes.size() != 1) throw ConfigError("qltwist takes exactly one --prime");
    Json cfg = base_config(o, {"disc", "modulus", "modulus_n", "k1", "k2", "p"});
    cfg["prime"] = o.primes.front();
    return envelope("normrel qltwist", o.seed, cfg, {ql_twist({{fm, o.p, o.primes.front(), o.k1, o.k2}})});
}

void emit(const Json& report, const Options& o)
{
    std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!o.json_out.empty()) {
        std::ofstream out(o.json_out, std::ios::binary);
        if (!out) throw ConfigError("cannot write " + o.json_out);
        out << text;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact Hecke-algebra, ray class and CM-form verifications"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--seed", o.seed, "seed for randomized sweeps");
    app.add_option("--json", o.json_out, "also write the report to this file");

    auto* hecke = app.add_subcommand("hecke", "double cosets, convolution and Satake eigenvalues");
    hecke->require_subcommand(1);
    for (const char* name : {"decompose", "convolve", "eigen"}) {
        auto* s = hecke->add_subcommand(name);
        s->add_option("--group", o.group, "gsp4 or gl2")->capture_default_str();
        s->add_option("--prime", o.prime)->required();
        s->add_option("--label", o.label, "Cartan label, e.g. 1,1,1")->required();
        if (std::string(name) == "convolve") s->add_option("--with", o.label2, "second label")->required();
    }

    auto* lf = app.add_subcommand("lfactor", "local L-factor polynomials and checks");
    lf->require_subcommand(1);
    for (const char* name : {"spin", "nov", "check-factorization", "grading"}) lf->add_subcommand(name)->add_option("--prime", o.prime)->required();

    auto* gj = app.add_subcommand("gejima", "Cartan-type decomposition for GL2 x GL2 in GSp4");
    gj->require_subcommand(1);
    auto* gred = gj->add_subcommand("reduce");
    gred->add_option("--prime", o.prime)->required();
    gred->add_option("--bound", o.bound)->required();
    gred->add_option("--matrix", o.matrix_file, "JSON file with a 4x4 matrix")->required();
    auto* gver = gj->add_subcommand("verify");
    gver->add_option("--prime", o.prime)->required();
    gver->add_option("--bound", o.bound)->required();
    gver->add_option("--samples", o.samples)->capture_default_str();

    auto* rc = app.add_subcommand("rayclass", "ray class group of an imaginary quadratic field");
    rc->add_option("--disc", o.disc)->required();
    rc->add_option("--modulus", o.modulus)->required();

    auto* cmc = app.add_subcommand("cm", "CM forms from Hecke characters");
    cmc->require_subcommand(1);
    auto* qexp = cmc->add_subcommand("qexp");
    qexp->add_option("--disc", o.disc)->required();
    qexp->add_option("--modulus", o.modulus, "modulus of psi")->required();
    qexp->add_option("--bound", o.coeff_bound)->capture_default_str();
    qexp->add_option("--choice", o.choice, "index among the unit-compatible characters")->capture_default_str();
    auto* phi = cmc->add_subcommand("phi");
    phi->add_option("--disc", o.disc)->required();
    phi->add_option("--modulus", o.modulus, "modulus of psi")->required();
    phi->add_option("--modulus-n", o.modulus_n, "ray class modulus n");
    phi->add_option("--bound", o.coeff_bound)->capture_default_str();

    auto* nr = app.add_subcommand("normrel", "norm-relation checks");
    nr->require_subcommand(1);
    auto* nid = nr->add_subcommand("identity");
    auto* qlt = nr->add_subcommand("qltwist");
    for (auto* s : {nid, qlt}) {
        s->add_option("--disc", o.disc)->capture_default_str();
        s->add_option("--modulus", o.modulus, "modulus of psi")->required();
        s->add_option("--modulus-n", o.modulus_n, "level n");
        s->add_option("--prime", o.primes, "split prime(s) l")->required();
    }
    qlt->add_option("--k1", o.k1)->capture_default_str();
    qlt->add_option("--k2", o.k2)->capture_default_str();
    qlt->add_option("--p", o.p)->capture_default_str();

    auto* suite = app.add_subcommand("suite", "run the acceptance battery");
    suite->add_flag("--quick", o.quick, "reduced sizes, disc -4 only");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    auto leaf = [](CLI::App* a) { return a->get_subcommands().empty() ? std::string() : a->get_subcommands().front()->get_name(); };
    Json report;
    try {
        if (hecke->parsed())
            report = run_hecke(leaf(hecke), o);
        else if (lf->parsed())
            report = run_lfactor(leaf(lf), o);
        else if (gj->parsed())
            report = run_gejima(leaf(gj), o);
        else if (rc->parsed())
            report = run_rayclass(o);
        else if (cmc->parsed())
            report = run_cm(leaf(cmc), o);
        else if (nr->parsed())
            report = run_normrel(leaf(nr), o);
        else
            report = run_suite({o.quick, o.seed});
        emit(report, o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const iq::DiscriminantBoundExceeded& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const iq::UnitObstruction& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const iq::ClassExtensionUnsupported& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return envelope_pass(report) ? 0 : 1;
}
