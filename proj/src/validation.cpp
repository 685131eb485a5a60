#include "splitsel/validation.hpp"

#include <cstdio>

#include "splitsel/fronthaul.hpp"

namespace splitsel {

namespace {

struct Reference
{
    const char* name;
    std::int64_t ops;
    std::vector<BbFunction> functions;
};

// Per-execution operation counts at the default cell, reference values.
const std::vector<Reference>& reference_rows()
{
    static const std::vector<Reference> rows{
      {"FFT/IFFT", 49152, {BbFunction::FFT_UL, BbFunction::IFFT_DL}},
      {"UL channel estimation", 297984, {BbFunction::UL_CHAN_EST}},
      {"MIMO detection", 640, {BbFunction::MIMO_DETECT}},
      {"DL channel estimation", 727072, {BbFunction::DL_CHAN_EST}},
      {"Precoding matrix computation", 151808, {BbFunction::PRECODE_MATRIX}},
      {"Precoding", 4096, {BbFunction::PRECODE_APPLY}},
      {"Demodulation", 838, {BbFunction::DEMODULATION}},
      {"Channel coding", 12952, {BbFunction::CHANNEL_CODING}},
      {"Channel decoding", 181128, {BbFunction::CHANNEL_DECODING}},
    };
    return rows;
}

} // namespace

ValidationReport validate_model(const OpCountTable& table)
{
    const CellConfig cell{};
    ValidationReport report;
    report.all_ok = true;
    for (const auto& p : reference_rows()) {
        CalibrationRow row{p.name, table.entry(p.functions.front()).algorithm, p.ops, 0, true};
        row.actual = ops_per_execution(p.functions.front(), cell, table);
        for (auto f : p.functions)
            row.ok = row.ok && ops_per_execution(f, cell, table) == p.ops;
        report.all_ok = report.all_ok && row.ok;
        report.rows.push_back(row);
    }
    return report;
}

std::string ValidationReport::to_text() const
{
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-30s %-32s %10s %10s  %s\n", "BB function", "algorithm", "expected", "model",
                  "status");
    out += buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%-30s %-32s %10lld %10lld  %s\n", r.function.c_str(), r.algorithm.c_str(),
                      static_cast<long long>(r.expected), static_cast<long long>(r.actual), r.ok ? "ok" : "MISMATCH");
        out += buf;
    }

    const CellConfig cell{};
    out += "\nFH boundary per split (default cell, full load, time-averaged Gb/s)\n";
    std::snprintf(buf, sizeof buf, "%-5s %-26s %-26s %10s %10s\n", "split", "DL payload", "UL payload", "DL", "UL");
    out += buf;
    for (auto s : kAllSplits) {
        const auto fh = sector_fh(s, cell, LoadPoint{0, 1.0, {}});
        std::snprintf(buf, sizeof buf, "%-5s %-26s %-26s %10.3f %10.3f\n", std::string(to_string(s)).c_str(),
                      std::string(to_string(fh_boundary(s, Direction::DL))).c_str(),
                      std::string(to_string(fh_boundary(s, Direction::UL))).c_str(), fh.dl_gbps, fh.ul_gbps);
        out += buf;
    }
    std::snprintf(buf, sizeof buf, "\nTDD duty: DL %d/%d = %.6f, UL %d/%d = %.6f\n",
                  14 * cell.tdd.dl_slots + cell.tdd.special_dl_syms, cell.tdd.period_symbols(), cell.tdd.dl_duty(),
                  14 * cell.tdd.ul_slots + cell.tdd.special_ul_syms, cell.tdd.period_symbols(), cell.tdd.ul_duty());
    out += buf;
    out += all_ok ? "calibration: all operation counts match\n" : "calibration: MISMATCH\n";
    return out;
}

} // namespace splitsel
