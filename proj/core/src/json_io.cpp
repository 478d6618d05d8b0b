#include "plie/json_io.hpp"

#include <json.hpp>

namespace plie {

using nlohmann::json;

namespace {

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw UsageError("invalid JSON: " + text);
    return j;
}

std::uint64_t pick_prime(const json& j, const JsonDefaults& d) {
    if (j.contains("p")) {
        const std::uint64_t p = j.at("p").get<std::uint64_t>();
        if (d.prime != 0 && p != d.prime) throw UsageError("JSON prime contradicts --p");
        return p;
    }
    if (d.prime == 0) throw UsageError("no prime: pass --p or a \"p\" field");
    return d.prime;
}

// An explicit "prec" wins over the flag default: values legitimately carry
// fewer digits than the working precision (roots, scalars' unit parts).
int pick_prec(const json& j, const JsonDefaults& d) {
    if (j.contains("prec")) return j.at("prec").get<int>();
    if (d.precision == 0) throw UsageError("no precision: pass --prec or a \"prec\" field");
    return d.precision;
}

mpz_class parse_decimal(const json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    mpz_class out;
    if (out.set_str(s, 10) != 0) throw UsageError("not a decimal integer: " + s);
    return out;
}

json zp_obj(const ZpInt& a) {
    return json{{"p", a.prime()}, {"prec", a.precision()}, {"residue", a.residue_string()}};
}

json chart_obj(const ChartVector& v, const std::string& group) {
    json coords = json::array();
    for (const auto& c : v.coords()) coords.push_back(c.residue_string());
    return json{{"group", group}, {"p", v.prime()}, {"prec", v.precision()}, {"coords", coords}};
}

json report_obj(const ConvergenceReport& r) {
    return json{{"steps", r.steps},
                {"floored", r.floored},
                {"stabilized_at", r.stabilized_at},
                {"out_precision", r.out_precision}};
}

json decay_obj(const DecayTable& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        rows.push_back(json{{"m", row.scale},
                            {"ratio_exponent", row.ratio_exponent},
                            {"floored", row.floored}});
    }
    return json{{"probe", t.probe}, {"rows", rows}};
}

}  // namespace

ZpInt parse_zp(const std::string& text, const JsonDefaults& d) {
    json j = parse_text(text);
    if (j.is_string() || j.is_number()) {
        // bare residue shorthand
        return ZpInt(d.prime, d.precision, parse_decimal(j));
    }
    return ZpInt(pick_prime(j, d), pick_prec(j, d), parse_decimal(j.at("residue")));
}

QpScalar parse_qp(const std::string& text, const JsonDefaults& d) {
    json j = parse_text(text);
    const std::uint64_t p = pick_prime(j, d);
    if (!j.contains("val") || j.at("val").is_null()) {
        mpz_class body = j.contains("residue") ? parse_decimal(j.at("residue")) : mpz_class(0);
        if (body == 0) return QpScalar::zero(p);
        return QpScalar::from_zp(ZpInt(p, pick_prec(j, d), std::move(body)));
    }
    const long v = j.at("val").get<long>();
    ZpInt unit(p, pick_prec(j, d), parse_decimal(j.at("residue")));
    return QpScalar::from_unit(v, unit);
}

ChartVector parse_chart(const std::string& text, const JsonDefaults& d) {
    json j = parse_text(text);
    if (j.contains("group") && !d.group.empty() && j.at("group").get<std::string>() != d.group) {
        throw UsageError("JSON group contradicts --group");
    }
    const std::uint64_t p = pick_prime(j, d);
    const int prec = pick_prec(j, d);
    if (!j.contains("coords") || !j.at("coords").is_array()) {
        throw UsageError("ChartVector JSON needs a \"coords\" array");
    }
    std::vector<ZpInt> coords;
    for (const auto& c : j.at("coords")) coords.emplace_back(p, prec, parse_decimal(c));
    return ChartVector(p, prec, std::move(coords));
}

std::vector<ZpInt> parse_zp_array(const std::string& text, const JsonDefaults& d) {
    json j = parse_text(text);
    if (!j.is_array()) throw UsageError("expected a JSON array of scalars");
    std::vector<ZpInt> out;
    for (const auto& item : j) {
        if (item.is_object()) {
            out.emplace_back(pick_prime(item, d), pick_prec(item, d),
                             parse_decimal(item.at("residue")));
        } else {
            out.emplace_back(d.prime, d.precision, parse_decimal(item));
        }
    }
    return out;
}

std::vector<ChartVector> parse_chart_array(const std::string& text, const JsonDefaults& d) {
    json j = parse_text(text);
    if (!j.is_array()) throw UsageError("expected a JSON array of chart vectors");
    std::vector<ChartVector> out;
    for (const auto& item : j) out.push_back(parse_chart(item.dump(), d));
    return out;
}

std::string zp_json(const ZpInt& a) { return zp_obj(a).dump(); }

std::string qp_json(const QpScalar& a) {
    if (a.is_zero()) {
        return json{{"p", a.prime()}, {"prec", 0}, {"residue", "0"}, {"val", nullptr}}.dump();
    }
    json j = zp_obj(a.unit());
    j["val"] = a.valuation();
    return j.dump();
}

std::string chart_json(const ChartVector& v, const std::string& group) {
    return chart_obj(v, group).dump();
}

std::string explog_json(const ExpLogResult& r, const std::string& group) {
    return json{{"result", chart_obj(r.value, group)}, {"report", report_obj(r.report)}}.dump();
}

std::string convergence_tsv(const ConvergenceReport& r) {
    std::string out;
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
        out += std::to_string(i + 1);
        out += '\t';
        out += std::to_string(r.steps[i]);
        out += '\n';
    }
    return out;
}

std::string power_json(const ChartVector& v, const std::string& group, int cutoff) {
    return json{{"result", chart_obj(v, group)},
                {"provenance", json{{"cutoff", cutoff}, {"result_precision", v.precision()}}}}
        .dump();
}

std::string pth_root_json(const PthRootResult& r, const std::string& group) {
    return json{{"root", chart_obj(r.root, group)},
                {"iterations", r.iterations},
                {"residual_exponents", r.residual_exponents},
                {"determined_precision", r.root.precision()}}
        .dump();
}

std::string trotter_json(const TrotterResult& r, const std::string& group) {
    return json{{"result", chart_obj(r.value, group)},
                {"report", json{{"steps", r.distance_exponents},
                                {"floored", r.floored},
                                {"stabilized_at", r.stabilized_at},
                                {"out_precision", r.out_precision}}}}
        .dump();
}

std::string trotter_tsv(const TrotterResult& r) {
    std::string out;
    for (std::size_t i = 0; i < r.distance_exponents.size(); ++i) {
        out += std::to_string(i + 1);
        out += '\t';
        out += std::to_string(r.distance_exponents[i]);
        out += '\n';
    }
    return out;
}

std::string filtration_jsonl(const FiltrationReport& r) {
    std::string out;
    for (const auto& c : r.checks) {
        json line{{"check", c.name},
                  {"statement", c.statement},
                  {"passed", c.passed()},
                  {"samples", c.samples},
                  {"floor_passes", c.floor_passes},
                  {"group", r.group},
                  {"p", r.prime},
                  {"prec", r.precision},
                  {"seed", r.seed}};
        if (c.counterexample) {
            const auto& w = *c.counterexample;
            line["witness"] = json{{"sample_index", w.sample_index},
                                   {"x", chart_obj(w.x, r.group)},
                                   {"y", chart_obj(w.y, r.group)},
                                   {"n", w.n}};
            line["exponents"] = json{{"lhs_bound", w.lhs_bound},
                                     {"lhs_floored", w.lhs_floored},
                                     {"rhs", w.rhs}};
        } else {
            line["witness"] = nullptr;
            line["exponents"] = nullptr;
        }
        out += line.dump();
        out += '\n';
    }
    return out;
}

std::string certificate_json(const LazardCertificate& c) {
    json replay = json::array();
    if (c.condition == "L1") {
        for (const auto& w : c.l1) {
            replay.push_back(json{{"j", w.level_j},
                                  {"x", chart_obj(w.x, c.group)},
                                  {"y", chart_obj(w.y, c.group)}});
        }
    } else if (c.condition == "L2") {
        for (const auto& w : c.l2) {
            json z = json::array();
            for (const auto& zi : w.z) z.push_back(zp_obj(zi));
            replay.push_back(json{{"g", chart_obj(w.g, c.group)}, {"z", z}});
        }
    } else if (c.condition == "L3") {
        for (const auto& w : c.l3) {
            replay.push_back(json{{"u", chart_obj(w.u, c.group)},
                                  {"v", chart_obj(w.v, c.group)},
                                  {"c", chart_obj(w.c, c.group)},
                                  {"w", chart_obj(w.w, c.group)}});
        }
    }
    return json{{"condition", c.condition},
                {"group", c.group},
                {"p", c.prime},
                {"prec", c.precision},
                {"seed", c.seed},
                {"samples", c.samples},
                {"verdict", c.pass ? "pass" : "fail"},
                {"failure_detail", c.failure_detail},
                {"depth", c.depth},
                {"level", c.level_j},
                {"target_prec", c.target_prec},
                {"replay", replay}}
        .dump();
}

std::string decay_table_json(const DecayTable& t) { return decay_obj(t).dump(); }

std::string decay_table_tsv(const DecayTable& t) {
    std::string out;
    for (const auto& row : t.rows) {
        out += std::to_string(row.scale);
        out += '\t';
        out += std::to_string(row.ratio_exponent);
        out += '\t';
        out += row.floored ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string multilin_json(const MultilinReport& r) {
    json j{{"samples", r.samples},
           {"passes", r.passes},
           {"floor_passes", r.floor_passes},
           {"passed", r.passed()}};
    if (r.counterexample) {
        j["witness"] = json{{"sample_index", r.counterexample->sample_index},
                            {"lhs_bound", r.counterexample->lhs_bound},
                            {"rhs", r.counterexample->rhs}};
    } else {
        j["witness"] = nullptr;
    }
    return j.dump();
}

}  // namespace plie
