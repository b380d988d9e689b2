#pragma once

// Parameter sweeps over (beta, lambda_hat) grids and their CSV / JSON
// serialization. Rows are evaluated by a small worker pool; the table is
// always assembled in lexicographic (lambda_hat, beta) order.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "json.hpp"
#include "rotring/energy.hpp"
#include "rotring/errors.hpp"
#include "rotring/rotation.hpp"
#include "rotring/version.hpp"

namespace rotring {

enum class SweepQuantity { izp, ellzp, energy };

inline SweepQuantity parse_sweep_quantity(std::string_view s) {
    if (s == "izp") return SweepQuantity::izp;
    if (s == "ellzp") return SweepQuantity::ellzp;
    if (s == "energy") return SweepQuantity::energy;
    throw domain_error("unknown sweep quantity '" + std::string(s) + "' (izp|ellzp|energy)");
}

inline const char* to_string(SweepQuantity q) {
    switch (q) {
        case SweepQuantity::izp: return "izp";
        case SweepQuantity::ellzp: return "ellzp";
        case SweepQuantity::energy: return "energy";
    }
    return "";
}

inline const char* unit_of(SweepQuantity q) {
    switch (q) {
        case SweepQuantity::izp: return "hbar*R/c";
        case SweepQuantity::ellzp: return "hbar";
        case SweepQuantity::energy: return "hbar*c/R";
    }
    return "";
}

enum class RowStatus { ok, degraded, failed };

struct SweepRow {
    double beta = 0.0;
    double lambda_hat = 0.0;
    double value = 0.0;
    double error_estimate = 0.0;
    RowStatus status = RowStatus::ok;
    std::string message;
};

struct Provenance {
    double tolerance = 1e-6;
    std::string tolerance_source = "default";
    std::string version = kVersion;
};

struct SweepTable {
    SweepQuantity quantity = SweepQuantity::izp;
    std::vector<double> betas;
    std::vector<double> lambdas;
    std::vector<SweepRow> rows;
    Provenance provenance;

    std::size_t count(RowStatus s) const {
        return static_cast<std::size_t>(
            std::count_if(rows.begin(), rows.end(), [s](const SweepRow& r) { return r.status == s; }));
    }
};

inline SweepRow evaluate_row(SweepQuantity q, double beta, double lambda_hat, double tol) {
    SweepRow row;
    row.beta = beta;
    row.lambda_hat = lambda_hat;
    try {
        const ModelPoint p = make_point(beta, lambda_hat);
        Estimate e;
        switch (q) {
            case SweepQuantity::izp: e = inertia_zp(p, tol); break;
            case SweepQuantity::ellzp: e = ell_zp(p, tol); break;
            case SweepQuantity::energy: {
                const auto r = casimir_energy_corotating(p, tol);
                e = {r.field_energy, r.quadrature_error};
                break;
            }
        }
        row.value = e.value;
        row.error_estimate = e.error;
        if (!(e.error <= tol)) {
            row.status = RowStatus::degraded;
            row.message = "error estimate above requested tolerance";
        }
    } catch (const std::exception& ex) {
        row.status = RowStatus::failed;
        row.value = std::numeric_limits<double>::quiet_NaN();
        row.error_estimate = std::numeric_limits<double>::quiet_NaN();
        row.message = ex.what();
    }
    return row;
}

inline SweepTable run_sweep(SweepQuantity q, std::vector<double> betas, std::vector<double> lambdas,
                            const Provenance& prov, unsigned threads = 0) {
    for (double b : betas)
        if (!std::isfinite(b) || !(std::abs(b) < 1.0)) throw domain_error("sweep beta grid must lie in (-1, 1)");
    for (double l : lambdas)
        if (std::isnan(l) || l < 0.0) throw domain_error("sweep lambda list must be >= 0");
    std::sort(betas.begin(), betas.end());
    std::sort(lambdas.begin(), lambdas.end());

    SweepTable t;
    t.quantity = q;
    t.betas = betas;
    t.lambdas = lambdas;
    t.provenance = prov;
    t.rows.resize(betas.size() * lambdas.size());

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, t.rows.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < t.rows.size(); i = next++) {
            const double l = lambdas[i / betas.size()];
            const double b = betas[i % betas.size()];
            t.rows[i] = evaluate_row(q, b, l, prov.tolerance);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return t;
}

inline std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return fmt::format("{}", v);  // shortest exact round trip
}

inline void write_csv(std::ostream& os, const SweepTable& t) {
    os << "# rotring sweep\n";
    os << "# version: " << t.provenance.version << "\n";
    os << "# quantity: " << to_string(t.quantity) << "\n";
    os << "# units: " << unit_of(t.quantity) << "\n";
    os << "# tolerance: " << fmt::format("{:g}", t.provenance.tolerance) << " (" << t.provenance.tolerance_source
       << ")\n";
    os << "# quadrature: tanh-sinh, analytic tail bound included in error_estimate\n";
    if (t.quantity == SweepQuantity::izp)
        os << "# differentiation: Richardson, initial step min(1e-3, (1-|beta|)/10)\n";
    os << "# rows: " << t.rows.size() << " (degraded " << t.count(RowStatus::degraded) << ", failed "
       << t.count(RowStatus::failed) << ")\n";
    for (const auto& r : t.rows) {
        if (r.status == RowStatus::ok) continue;
        os << "# " << (r.status == RowStatus::degraded ? "degraded" : "failed") << ": beta=" << format_number(r.beta)
           << " lambda_hat=" << format_number(r.lambda_hat) << " " << r.message << "\n";
    }
    os << "beta,lambda_hat,value,error_estimate\n";
    for (const auto& r : t.rows) {
        os << format_number(r.beta) << ',' << format_number(r.lambda_hat) << ',' << format_number(r.value) << ','
           << fmt::format("{:.3e}", r.error_estimate) << '\n';
    }
}

namespace detail {

// JSON has no inf/nan; encode them as strings.
inline nlohmann::json json_number(double v) {
    if (std::isfinite(v)) return v;
    return format_number(v);
}

}  // namespace detail

inline nlohmann::json to_json(const SweepTable& t) {
    using nlohmann::json;
    json j;
    j["quantity"] = to_string(t.quantity);
    j["units"] = unit_of(t.quantity);
    json axes;
    axes["beta"] = t.betas;
    axes["lambda_hat"] = json::array();
    for (double l : t.lambdas) axes["lambda_hat"].push_back(detail::json_number(l));
    j["axes"] = axes;
    j["provenance"] = {{"version", t.provenance.version},
                       {"tolerance", t.provenance.tolerance},
                       {"tolerance_source", t.provenance.tolerance_source},
                       {"quadrature", "tanh-sinh, analytic tail bound included in error_estimate"}};
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row = {{"beta", r.beta},
                    {"lambda_hat", detail::json_number(r.lambda_hat)},
                    {"value", detail::json_number(r.value)},
                    {"error_estimate", detail::json_number(r.error_estimate)},
                    {"status", r.status == RowStatus::ok ? "ok" : r.status == RowStatus::degraded ? "degraded" : "failed"}};
        if (!r.message.empty()) row["message"] = r.message;
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j;
}

// "start:stop:count" (inclusive) or a comma-separated list.
inline std::vector<double> parse_grid(std::string_view spec) {
    auto to_double = [](std::string_view s) {
        std::string str(s);
        try {
            std::size_t used = 0;
            const double v = std::stod(str, &used);
            if (used != str.size()) throw std::invalid_argument(str);
            return v;
        } catch (const std::exception&) {
            throw domain_error("cannot parse number '" + str + "'");
        }
    };
    std::vector<double> out;
    if (spec.find(':') != std::string_view::npos) {
        const auto c1 = spec.find(':');
        const auto c2 = spec.find(':', c1 + 1);
        if (c2 == std::string_view::npos) throw domain_error("range grid must be start:stop:count");
        const double a = to_double(spec.substr(0, c1));
        const double b = to_double(spec.substr(c1 + 1, c2 - c1 - 1));
        const double n = to_double(spec.substr(c2 + 1));
        if (!(n >= 1.0) || n != std::floor(n)) throw domain_error("grid count must be a positive integer");
        const int count = static_cast<int>(n);
        for (int i = 0; i < count; ++i) {
            const double x = count == 1 ? a : a + (b - a) * i / (count - 1);
            // Snap to 15 digits so 0:0.95:20 yields 0.05 rather than 0.049999999999999996.
            out.push_back(std::stod(fmt::format("{:.15g}", x)));
        }
        return out;
    }
    std::size_t start = 0;
    while (start <= spec.size()) {
        auto end = spec.find(',', start);
        if (end == std::string_view::npos) end = spec.size();
        if (end > start) out.push_back(to_double(spec.substr(start, end - start)));
        start = end + 1;
    }
    if (out.empty()) throw domain_error("empty grid");
    return out;
}

}  // namespace rotring
