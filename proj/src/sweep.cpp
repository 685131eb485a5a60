#include "splitsel/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "splitsel/error.hpp"

namespace splitsel {

std::string_view to_string(SweepParam p) noexcept
{
    switch (p) {
    case SweepParam::Epsilon: return "epsilon";
    case SweepParam::Capacity: return "capacity";
    case SweepParam::LoadScale: return "load_scale";
    }
    return "?";
}

SweepParam parse_sweep_param(std::string_view name)
{
    for (auto p : {SweepParam::Epsilon, SweepParam::Capacity, SweepParam::LoadScale})
        if (to_string(p) == name)
            return p;
    throw InputError("param", "unknown sweep parameter '" + std::string(name) + "' (epsilon|capacity|load_scale)");
}

namespace {

double to_double(std::string_view s)
{
    const std::string str(s);
    try {
        std::size_t used = 0;
        const double v = std::stod(str, &used);
        if (used == str.size())
            return v;
    } catch (const std::exception&) {
    }
    throw InputError("range", "not a number: '" + str + "'");
}

} // namespace

std::vector<double> parse_range(std::string_view text)
{
    std::vector<double> out;
    if (text.empty())
        throw InputError("range", "empty range");

    if (text.find(':') != std::string_view::npos) {
        const auto a = text.find(':');
        const auto b = text.find(':', a + 1);
        if (b == std::string_view::npos)
            throw InputError("range", "expected start:stop:step");
        const double start = to_double(text.substr(0, a));
        const double stop = to_double(text.substr(a + 1, b - a - 1));
        const double step = to_double(text.substr(b + 1));
        if (!(step > 0))
            throw InputError("range", "step must be positive");
        if (stop < start)
            throw InputError("range", "empty range: stop < start");
        const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
        for (std::size_t i = 0; i <= n; ++i)
            out.push_back(start + static_cast<double>(i) * step);
        return out;
    }

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto piece = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        out.push_back(to_double(piece));
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

std::vector<SweepRow> sweep(const Scenario& base, SweepParam param, std::span<const double> values,
                            SearchMethod method)
{
    if (values.empty())
        throw InputError("range", "empty range");
    std::vector<SweepRow> rows;
    for (double v : values) {
        Scenario s = base;
        switch (param) {
        case SweepParam::Epsilon: s.epsilon = v; break;
        case SweepParam::Capacity: s.link.capacity_gbps = v; break;
        case SweepParam::LoadScale: s.load_scale = v; break;
        }
        const auto result = run(s, method);
        SweepRow row;
        row.value = v;
        for (const auto& p : result.periods) {
            row.objective_total += p.objective_gops;
            for (auto x : p.optimum)
                ++row.split_histogram[index_of(x)];
            ++(p.feasible ? row.feasible_periods : row.infeasible_periods);
            row.tie_vectors += p.optimal_set.size();
            row.feasible_combinations += p.feasible_combinations;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows, SweepParam param)
{
    std::string out(to_string(param));
    out += ",objective_total_gops";
    for (auto s : kAllSplits) {
        out += ",count_";
        out += to_string(s);
    }
    out += ",feasible_periods,infeasible_periods,tie_vectors,feasible_combinations\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%g,%.3f", r.value, r.objective_total);
        out += buf;
        for (auto c : r.split_histogram)
            out += "," + std::to_string(c);
        out += "," + std::to_string(r.feasible_periods) + "," + std::to_string(r.infeasible_periods) + "," +
               std::to_string(r.tie_vectors) + "," + std::to_string(r.feasible_combinations) + "\n";
    }
    return out;
}

} // namespace splitsel
