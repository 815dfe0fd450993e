#include "paley/sweep.hpp"

#include "paley/block_circulant.hpp"
#include "paley/fk_optimizer.hpp"
#include "paley/graph_matrices.hpp"
#include "paley/sdp.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

namespace paley {

namespace {

Deadline deadline_in(double seconds) {
    if (seconds <= 0) return std::nullopt;
    return std::chrono::steady_clock::now() +
           std::chrono::milliseconds((int64_t)(1000.0 * seconds));
}

}  // namespace

SweepRecord compute_quantity(const std::string& quantity, int64_t p, double timeout_seconds,
                             double tol) {
    SweepRecord rec;
    rec.p = p;
    rec.quantity = quantity;
    auto start = std::chrono::steady_clock::now();
    Deadline dl = deadline_in(timeout_seconds);
    try {
        if (quantity == "omega") {
            rec.value = clique_number(build_paley(p));
        } else if (quantity == "sos2") {
            SdpOptions o;
            o.tol = std::min(tol, 1e-5);
            o.max_iter = 200000;
            o.deadline = dl;
            SdpSolution s = solve(build_sos2(build_paley(p)), o);
            rec.value = s.value;
            if (s.status == SdpStatus::Capped) rec.status = "capped";
            else if (s.status == SdpStatus::MaxIter) rec.status = "failed";
        } else if (quantity == "sos4") {
            SdpOptions o;
            o.tol = std::min(tol, 1e-5);
            o.max_iter = 40000;
            o.deadline = dl;
            SdpSolution s = solve(build_sos4(build_paley(p)), o);
            rec.value = s.value;
            if (s.status == SdpStatus::Capped) rec.status = "capped";
            else if (s.status == SdpStatus::MaxIter) rec.status = "failed";
        } else if (quantity == "fk4") {
            FkOptions o;
            o.tol = tol;
            o.deadline = dl;
            FkResult r = fk4_value(build_paley(p), o);
            rec.value = r.value;
            if (r.capped) rec.status = "capped";
        } else if (quantity == "t441norm") {
            rec.value = t441_norm_via_slices(build_paley(p));
        } else if (quantity == "diamondnorm") {
            rec.value = spectral_norm(diamond_matrix(build_paley(p)), 1e-8).value;
        } else if (quantity.rfind("restricted:", 0) == 0) {
            std::string rest = quantity.substr(11);
            auto c1 = rest.find(':');
            auto c2 = rest.find(':', c1 + 1);
            if (c1 == std::string::npos || c2 == std::string::npos)
                throw std::invalid_argument("restricted:<shape>:<i>:<j>");
            Shape sh = shape_from_name(rest.substr(0, c1));
            int i = std::stoi(rest.substr(c1 + 1, c2 - c1 - 1));
            int j = std::stoi(rest.substr(c2 + 1));
            NormResult nr = restricted_norm(build_paley(p), sh, i, j, 1e-6);
            rec.value = nr.value;
            if (!nr.converged) rec.status = "capped";
        } else if (quantity.rfind("norm:", 0) == 0) {
            Shape sh = shape_from_name(quantity.substr(5));
            NormResult nr = shape_norm(build_paley(p), sh, 1e-6);
            rec.value = nr.value;
            if (!nr.converged) rec.status = "capped";
        } else {
            throw std::invalid_argument("unknown quantity: " + quantity);
        }
    } catch (const std::exception&) {
        rec.status = "failed";
        rec.value = std::nan("");
    }
    rec.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (rec.status == "ok" && timeout_seconds > 0 && rec.runtime_seconds > timeout_seconds)
        rec.status = "capped";
    return rec;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
    std::vector<SweepRecord> records(config.primes.size());
    int jobs = config.jobs > 0 ? config.jobs
                               : (int)std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<int>(jobs, (int)config.primes.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= config.primes.size()) return;
            records[i] = compute_quantity(config.quantity, config.primes[i],
                                          config.timeout_seconds, config.tol);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    std::sort(records.begin(), records.end(),
              [](const SweepRecord& a, const SweepRecord& b) { return a.p < b.p; });
    return records;
}

void write_csv(const std::vector<SweepRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "p,quantity,value,runtime_seconds,status\n";
    out.precision(12);
    for (const auto& r : records)
        out << r.p << "," << r.quantity << "," << r.value << "," << r.runtime_seconds << ","
            << r.status << "\n";
}

std::vector<SweepRecord> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path);
    if (line.rfind("p,quantity,value", 0) != 0)
        throw std::runtime_error("malformed CSV header in " + path);
    std::vector<SweepRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        SweepRecord r;
        if (!std::getline(ss, field, ',')) throw std::runtime_error("malformed CSV row");
        r.p = std::stoll(field);
        if (!std::getline(ss, r.quantity, ',')) throw std::runtime_error("malformed CSV row");
        if (!std::getline(ss, field, ',')) throw std::runtime_error("malformed CSV row");
        r.value = std::stod(field);
        if (!std::getline(ss, field, ',')) throw std::runtime_error("malformed CSV row");
        r.runtime_seconds = std::stod(field);
        if (!std::getline(ss, r.status, ',')) throw std::runtime_error("malformed CSV row");
        out.push_back(r);
    }
    return out;
}

}  // namespace paley
