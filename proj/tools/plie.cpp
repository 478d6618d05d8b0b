// plie: p-adic Lie group chart calculator.
//
// Data goes to stdout as one JSON document (JSON lines for audits, TSV with
// --table), diagnostics to stderr. Identical flags and seed give bit-identical
// output. Exit codes: 0 success, 1 domain error, 2 verification failure,
// 3 usage error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "plie/json_io.hpp"
#include "plie/selftest.hpp"
#include "plie/series.hpp"

namespace {

struct CommonFlags {
    std::uint64_t p = 5;
    int prec = 24;
    std::string group = "mult";
    std::uint64_t seed = 7;
    long samples = 200;
    int target = 10;
    int n_max = 8;
    std::string out;
    bool table = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_group = true) {
    cmd->add_option("--p", f.p, "odd prime >= 3");
    cmd->add_option("--prec", f.prec, "working precision N (digits)");
    if (with_group) cmd->add_option("--group", f.group, "mult | gl:<m> | heis");
    cmd->add_option("--seed", f.seed, "RNG seed");
    cmd->add_option("--samples", f.samples, "sample count");
    cmd->add_option("--target-prec", f.target, "target precision M");
    cmd->add_option("--n-max", f.n_max, "limit index bound");
    cmd->add_option("--out", f.out, "write data to this file instead of stdout");
    cmd->add_flag("--table", f.table, "emit TSV tables instead of JSON");
}

void validate(const CommonFlags& f) {
    if (!plie::is_supported_prime(f.p)) throw plie::UsageError("--p must be an odd prime >= 3");
    if (f.prec < 4) throw plie::UsageError("--prec must be >= 4");
    if (f.samples < 1) throw plie::UsageError("--samples must be >= 1");
}

void emit(const CommonFlags& f, const std::string& data) {
    if (f.out.empty()) {
        std::cout << data;
        if (!data.empty() && data.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream file(f.out, std::ios::binary);
    if (!file) throw plie::UsageError("cannot open --out file " + f.out);
    file << data;
}

plie::JsonDefaults defaults(const CommonFlags& f) { return {f.p, f.prec, f.group}; }

plie::CoefficientFn exp_taylor_coefficient(int degree, int coeff_target) {
    // Series-derivative coefficients of exp on the multiplicative chart:
    // a_1(x, u) = (1 + exp(x)) u, a_2(x, u) = (1 + exp(x)) u^2 / 2.
    return [degree, coeff_target](const plie::ChartVector& x, const plie::ChartVector& u) {
        plie::ZpInt exv = plie::exp_series(x.coord(0), coeff_target);
        plie::ZpInt d = plie::zp_add(plie::ZpInt::one(x.prime(), exv.precision()), exv);
        plie::ZpInt term = plie::zp_mul(d, u.coord(0));
        if (degree == 2) {
            term = plie::zp_mul(term, u.coord(0));
            term = plie::zp_mul(term, plie::zp_inv(plie::ZpInt::from_long(x.prime(),
                                                                          term.precision(), 2)));
        }
        return plie::ChartVector(x.prime(), term.precision(), {term});
    };
}

}  // namespace

int main(int argc, char** argv) {
    using namespace plie;
    CLI::App app{"p-adic Lie group chart calculator"};

    CommonFlags lf, ef, pf, rf, tf, sf, sif, af, zf, bf, stf;
    std::string log_x, exp_x, pow_x, pow_z, root_x, tr_x, tr_y;
    std::string psi_z, psi_basis, psi_inv_g, psi_inv_basis;
    int psi_j = 0, psi_inv_j = 0;
    std::string condition;
    int lz_depth = 6, lz_j = 0;
    std::string probe_kind, probe_f = "taup";
    int probe_mmax = 8, probe_eps = 2;
    double st_scale = 1.0;

    CLI::App* log_cmd = app.add_subcommand("log", "logarithm as the limit p^-n x^(p^n)");
    add_common(log_cmd, lf);
    log_cmd->add_option("--x", log_x, "input chart vector (JSON)")->required();

    CLI::App* exp_cmd = app.add_subcommand("exp", "exponential as iterated p-th roots of p^n x");
    add_common(exp_cmd, ef);
    exp_cmd->add_option("--x", exp_x, "input chart vector (JSON)")->required();

    CLI::App* pow_cmd = app.add_subcommand("pow", "p-adic power x^z by digit interpolation");
    add_common(pow_cmd, pf);
    pow_cmd->add_option("--x", pow_x, "base chart vector (JSON)")->required();
    pow_cmd->add_option("--z", pow_z, "Z_p exponent (JSON)")->required();

    CLI::App* root_cmd = app.add_subcommand("root", "p-th root by fixed-point iteration");
    add_common(root_cmd, rf);
    root_cmd->add_option("--x", root_x, "input chart vector (JSON)")->required();

    CLI::App* trotter_cmd = app.add_subcommand("trotter", "Trotter sum formula terms");
    add_common(trotter_cmd, tf);
    trotter_cmd->add_option("--x", tr_x, "first chart vector (JSON)")->required();
    trotter_cmd->add_option("--y", tr_y, "second chart vector (JSON)")->required();

    CLI::App* psi_cmd = app.add_subcommand("psi", "second-kind coordinates");
    add_common(psi_cmd, sf);
    psi_cmd->add_option("--z", psi_z, "scalar coordinates (JSON array)")->required();
    psi_cmd->add_option("--j", psi_j, "ball level j >= 0");
    psi_cmd->add_option("--basis", psi_basis, "basis vectors (JSON array of chart vectors)");

    CLI::App* psi_inv_cmd = app.add_subcommand("psi-inv", "invert second-kind coordinates");
    add_common(psi_inv_cmd, sif);
    psi_inv_cmd->add_option("--g", psi_inv_g, "target chart vector (JSON)")->required();
    psi_inv_cmd->add_option("--j", psi_inv_j, "ball level j >= 0");
    psi_inv_cmd->add_option("--basis", psi_inv_basis, "basis vectors (JSON array)");

    CLI::App* audit_cmd = app.add_subcommand("audit-filtration", "filtration exponent audit");
    add_common(audit_cmd, af);

    CLI::App* lazard_cmd = app.add_subcommand("lazard", "Lazard condition certificates");
    add_common(lazard_cmd, zf);
    lazard_cmd->add_option("--condition", condition, "l1 | l2 | l3")->required();
    lazard_cmd->add_option("--depth", lz_depth, "L1: deepest quotient level");
    lazard_cmd->add_option("--j", lz_j, "L2: psi ball level");

    CLI::App* probe_cmd = app.add_subcommand("probe", "ultrametric calculus probes");
    add_common(probe_cmd, bf);
    probe_cmd->add_option("kind", probe_kind, "strict | taylor | multilin | curve")->required();
    probe_cmd->add_option("--f", probe_f, "probe subject: taup | log | exp | id");
    probe_cmd->add_option("--m-max", probe_mmax, "largest scale exponent");
    probe_cmd->add_option("--eps", probe_eps, "perturbation exponent (multilin)");

    CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the full acceptance suite");
    add_common(selftest_cmd, stf, false);
    selftest_cmd->add_option("--scale", st_scale, "sample-count multiplier (smoke runs)");

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        if (log_cmd->parsed()) {
            validate(lf);
            ChartGroup G = ChartGroup::parse(lf.group, lf.p);
            ExpLogResult r = log_chart(G, parse_chart(log_x, defaults(lf)), lf.target);
            emit(lf, lf.table ? convergence_tsv(r.report) : explog_json(r, G.name()));
        } else if (exp_cmd->parsed()) {
            validate(ef);
            ChartGroup G = ChartGroup::parse(ef.group, ef.p);
            ExpLogResult r = exp_chart(G, parse_chart(exp_x, defaults(ef)), ef.target);
            emit(ef, ef.table ? convergence_tsv(r.report) : explog_json(r, G.name()));
        } else if (pow_cmd->parsed()) {
            validate(pf);
            ChartGroup G = ChartGroup::parse(pf.group, pf.p);
            ChartVector x = parse_chart(pow_x, defaults(pf));
            ChartVector r = power_padic(G, x, parse_zp(pow_z, defaults(pf)));
            NormExp ex = norm_exp(x);
            const int cutoff = ex.is_finite() ? static_cast<int>(x.precision() - ex.exponent()) : 0;
            emit(pf, power_json(r, G.name(), cutoff));
        } else if (root_cmd->parsed()) {
            validate(rf);
            ChartGroup G = ChartGroup::parse(rf.group, rf.p);
            PthRootResult r = pth_root(G, parse_chart(root_x, defaults(rf)));
            emit(rf, pth_root_json(r, G.name()));
        } else if (trotter_cmd->parsed()) {
            validate(tf);
            ChartGroup G = ChartGroup::parse(tf.group, tf.p);
            TrotterResult r = trotter_sum(G, parse_chart(tr_x, defaults(tf)),
                                          parse_chart(tr_y, defaults(tf)), tf.n_max, tf.target);
            emit(tf, tf.table ? trotter_tsv(r) : trotter_json(r, G.name()));
        } else if (psi_cmd->parsed()) {
            validate(sf);
            ChartGroup G = ChartGroup::parse(sf.group, sf.p);
            auto basis = psi_basis.empty() ? standard_basis(G, sf.prec)
                                           : parse_chart_array(psi_basis, defaults(sf));
            ChartVector r = second_kind(G, basis, psi_j, parse_zp_array(psi_z, defaults(sf)),
                                        sf.target);
            emit(sf, chart_json(r, G.name()));
        } else if (psi_inv_cmd->parsed()) {
            validate(sif);
            ChartGroup G = ChartGroup::parse(sif.group, sif.p);
            auto basis = psi_inv_basis.empty() ? standard_basis(G, sif.prec)
                                               : parse_chart_array(psi_inv_basis, defaults(sif));
            std::vector<ZpInt> z = second_kind_inverse(G, basis, psi_inv_j,
                                                       parse_chart(psi_inv_g, defaults(sif)),
                                                       sif.target);
            std::string out = "[";
            for (std::size_t i = 0; i < z.size(); ++i) out += (i ? "," : "") + zp_json(z[i]);
            out += "]";
            emit(sif, out);
        } else if (audit_cmd->parsed()) {
            validate(af);
            ChartGroup G = ChartGroup::parse(af.group, af.p);
            FiltrationReport r = audit_filtration(G, af.prec, af.samples, af.seed);
            emit(af, filtration_jsonl(r));
            if (!r.all_passed()) return 2;
        } else if (lazard_cmd->parsed()) {
            validate(zf);
            ChartGroup G = ChartGroup::parse(zf.group, zf.p);
            LazardCertificate cert;
            if (condition == "l1") {
                cert = audit_L1(G, zf.prec, lz_depth, zf.samples, zf.seed);
            } else if (condition == "l2") {
                cert = audit_L2(G, standard_basis(G, zf.prec), zf.prec, lz_j, zf.samples,
                                zf.target, zf.seed);
            } else if (condition == "l3") {
                cert = audit_L3(G, zf.prec, zf.samples, zf.seed);
            } else {
                throw UsageError("--condition must be l1, l2 or l3");
            }
            emit(zf, certificate_json(cert));
            if (!cert.pass) return 2;
        } else if (probe_cmd->parsed()) {
            validate(bf);
            ChartGroup G = ChartGroup::parse(bf.group, bf.p);
            if (probe_kind == "strict") {
                ProbeFunction f = probe_f == "id"    ? probe_identity()
                                  : probe_f == "log" ? probe_log(G, bf.target)
                                  : probe_f == "exp" ? probe_exp(G, bf.target)
                                                     : probe_tau_p(G);
                std::vector<ZpInt> a(static_cast<std::size_t>(G.dim() * G.dim()),
                                     ZpInt::zero(bf.p, bf.prec));
                const long diag = probe_f == "taup" ? static_cast<long>(bf.p) : 1;
                for (int i = 0; i < G.dim(); ++i) {
                    a[static_cast<std::size_t>(i * G.dim() + i)] =
                        ZpInt::from_long(bf.p, bf.prec, diag);
                }
                DecayTable t = strict_diff_probe(f, G.zero(bf.prec), a, probe_mmax,
                                                 static_cast<int>(bf.samples), bf.seed);
                emit(bf, bf.table ? decay_table_tsv(t) : decay_table_json(t));
            } else if (probe_kind == "taylor") {
                if (G.kind() != ChartGroup::Kind::Multiplicative) {
                    throw UsageError(
                        "probe taylor: built-in series coefficients exist for --group mult only");
                }
                const int coeff_target = std::min(14, bf.prec - 10);
                DecayTable t = taylor_probe(probe_exp_adaptive(G, bf.target), G.zero(bf.prec),
                                            {exp_taylor_coefficient(1, coeff_target),
                                             exp_taylor_coefficient(2, coeff_target)},
                                            probe_mmax, static_cast<int>(bf.samples), bf.seed);
                emit(bf, bf.table ? decay_table_tsv(t) : decay_table_json(t));
            } else if (probe_kind == "multilin") {
                // built-in subject: 2x2 matrix product, a bilinear map of norm 1
                MultilinFn beta = [](const std::vector<std::vector<ZpInt>>& args) {
                    const auto& a = args[0];
                    const auto& b = args[1];
                    std::vector<ZpInt> out;
                    out.push_back(zp_add(zp_mul(a[0], b[0]), zp_mul(a[1], b[2])));
                    out.push_back(zp_add(zp_mul(a[0], b[1]), zp_mul(a[1], b[3])));
                    out.push_back(zp_add(zp_mul(a[2], b[0]), zp_mul(a[3], b[2])));
                    out.push_back(zp_add(zp_mul(a[2], b[1]), zp_mul(a[3], b[3])));
                    return out;
                };
                MultilinReport r =
                    multilin_perturb_check(beta, 2, 4, 0, probe_eps, static_cast<int>(bf.samples),
                                           bf.p, bf.prec, bf.seed);
                emit(bf, multilin_json(r));
                if (!r.passed()) return 2;
            } else if (probe_kind == "curve") {
                DecayTable t = curve_decay_table(&default_curve_kmap, bf.p, bf.prec, probe_mmax,
                                                 static_cast<int>(bf.samples), bf.seed);
                emit(bf, bf.table ? decay_table_tsv(t) : decay_table_json(t));
            } else {
                throw UsageError("probe kind must be strict, taylor, multilin or curve");
            }
        } else if (selftest_cmd->parsed()) {
            validate(stf);
            SelftestOptions opt{stf.p, stf.prec, stf.target, stf.seed, st_scale};
            auto results = run_acceptance(opt);
            for (const auto& r : results) {
                std::cout << "criterion " << r.id << ": " << (r.passed ? "PASS" : "FAIL") << " - "
                          << r.name << " (" << r.detail << ")\n";
            }
            return all_passed(results) ? 0 : 2;
        }
        return 0;
    } catch (const UsageError& ex) {
        std::cerr << "usage error: " << ex.what() << '\n';
        return 3;
    } catch (const VerificationError& ex) {
        std::cerr << "verification failure: " << ex.what() << '\n';
        return 2;
    } catch (const DomainError& ex) {
        std::cerr << "domain error: " << ex.what() << '\n';
        return 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    }
}
