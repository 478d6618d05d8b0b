#pragma once

#include <string>
#include <vector>

#include "plie/explog.hpp"
#include "plie/filtration.hpp"
#include "plie/lazard.hpp"
#include "plie/probes.hpp"

namespace plie {

// JSON grammar used by every CLI command:
//   ZpInt        {"p": <int>, "prec": <int>, "residue": "<decimal string>"}
//   QpScalar     ZpInt fields plus {"val": <int>} (null val = the zero scalar)
//   ChartVector  {"group": "mult"|"gl:<m>"|"heis", "p":, "prec":, "coords": ["<decimal>", ...]}
// Parsers fill omitted fields from the defaults (CLI flags) and reject
// explicit fields that contradict them.

struct JsonDefaults {
    std::uint64_t prime = 0;
    int precision = 0;
    std::string group;
};

ZpInt parse_zp(const std::string& text, const JsonDefaults& defaults);
QpScalar parse_qp(const std::string& text, const JsonDefaults& defaults);
ChartVector parse_chart(const std::string& text, const JsonDefaults& defaults);
std::vector<ZpInt> parse_zp_array(const std::string& text, const JsonDefaults& defaults);
std::vector<ChartVector> parse_chart_array(const std::string& text, const JsonDefaults& defaults);

std::string zp_json(const ZpInt& a);
std::string qp_json(const QpScalar& a);
std::string chart_json(const ChartVector& v, const std::string& group);

// {"result": <chart>, "report": {"steps": [...], "floored": [...],
//  "stabilized_at": n, "out_precision": P}}
std::string explog_json(const ExpLogResult& r, const std::string& group);
std::string convergence_tsv(const ConvergenceReport& r);

// {"result": ..., "provenance": {"cutoff": ..., "result_precision": ...}}
std::string power_json(const ChartVector& v, const std::string& group, int cutoff);

std::string pth_root_json(const PthRootResult& r, const std::string& group);

std::string trotter_json(const TrotterResult& r, const std::string& group);
std::string trotter_tsv(const TrotterResult& r);

// One check per line: {"check":, "passed":, "witness":?, "exponents":?, ...}
std::string filtration_jsonl(const FiltrationReport& r);

std::string certificate_json(const LazardCertificate& c);

std::string decay_table_json(const DecayTable& t);
std::string decay_table_tsv(const DecayTable& t);

std::string multilin_json(const MultilinReport& r);

}  // namespace plie
