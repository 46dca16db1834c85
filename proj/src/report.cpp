#include "quasipin/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qpin {

using ordered_json = nlohmann::ordered_json;

BasisParams reference_params(RankId rank, int z) {
    switch (rank) {
    case RankId::r3s: return {2.679747, 1.868327, z, rank};
    case RankId::r3d: return {2.691551, 1.892738, z, rank};
    case RankId::r3p: return {2.686435, 1.274552, z, rank};
    case RankId::r5:  return {2.711177, 1.304903, z, rank};
    case RankId::r6a: return {2.674424, 1.319161, z, rank};
    case RankId::r6b: return {2.712166, 1.323417, z, rank};
    case RankId::r7:  return {2.772402, 1.336274, z, rank};
    case RankId::r8:  return {2.767562, 1.331108, z, rank};
    }
    throw std::invalid_argument("unknown rank id");
}

RankAnalysis analyze_state(const CIState& state) {
    RankAnalysis a;
    a.state = state;
    const OneBodyRDM rdm = one_body_rdm(state);
    a.spectrum = natural_occupations(rdm);
    a.natural_tensor = to_natural_basis(state, a.spectrum);
    const int m = a.spectrum.rank();

    if (m >= 5)
        a.constraints = evaluate(a.spectrum, catalog_for(m));
    a.entropy = jaynes_entropy(a.spectrum);
    if (m == 6)
        a.t = t_measure(tensor_from_state(state));

    if (m == 5) {
        a.projection_dets = selection_rule_dets(5, {"structural"});
        a.projection_value = projection_norm(a.natural_tensor, *a.projection_dets);
    } else if (m == 6) {
        a.projection_dets = selection_rule_dets(6, {"bd1", "bd2", "bd3", "d"});
        a.projection_value = projection_norm(a.natural_tensor, *a.projection_dets);
        for (const auto& v : a.constraints.values)
            if (v.id == "d")
                a.projection_bound = projection_bounds(a.spectrum, 6, v.delta);
    } else if (m == 7) {
        a.projection_dets = selection_rule_dets(7, {"d1", "d2"});
        a.projection_value = projection_norm(a.natural_tensor, *a.projection_dets);
        for (const auto& v : a.constraints.values)
            if (v.id == "d2")
                a.projection_bound = projection_bounds(a.spectrum, 7, v.delta);
    }
    return a;
}

RankAnalysis analyze(const RunConfig& config) {
    CIState state;
    std::optional<OptimizerTrace> trace;
    if (config.optimize) {
        SolveResult r = optimize_screening(config.rank, config.z);
        state = std::move(r.state);
        trace = std::move(r.trace);
    } else {
        if (!config.alpha || !config.gamma)
            throw std::invalid_argument("alpha and gamma must be given together, or use --optimize");
        BasisParams p{*config.alpha, *config.gamma, config.z, config.rank};
        state = ground_state(p);
    }

    RankAnalysis a = analyze_state(state);
    a.trace = std::move(trace);
    if (config.quadrature_check) {
        const QuadratureOracle oracle;
        const double dev = quadrature_check(standard_basis(state.params), oracle);
        if (dev > 1e-8)
            throw std::runtime_error("quadrature check failed: deviation " + std::to_string(dev));
        a.quadrature_deviation = dev;
    }
    return a;
}

namespace {

ordered_json det_list_json(const std::vector<Determinant>& dets) {
    ordered_json arr = ordered_json::array();
    for (const auto& d : dets)
        arr.push_back({d.orb[0] + 1, d.orb[1] + 1, d.orb[2] + 1}); // 1-based, as printed
    return arr;
}

ordered_json document(const RankAnalysis& a) {
    ordered_json doc;
    doc["rank"] = rank_name(a.state.params.rank);
    doc["z"] = a.state.params.z;
    doc["alpha"] = a.state.params.alpha;
    doc["gamma"] = a.state.params.gamma;
    doc["energy_hartree"] = a.state.energy;
    doc["occupations"] = a.spectrum.lambdas;
    ordered_json cons = ordered_json::array();
    for (const auto& v : a.constraints.values)
        cons.push_back({{"id", v.id}, {"delta", v.delta}});
    doc["constraints"] = cons;
    if (!a.constraints.borland_dennis_residuals.empty())
        doc["borland_dennis_residuals"] = a.constraints.borland_dennis_residuals;
    if (a.t)
        doc["t_measure"] = {{"value", a.t->value}, {"abs", std::fabs(a.t->value)}};
    doc["jaynes_entropy"] = a.entropy.value;
    if (a.projection_dets) {
        ordered_json proj;
        proj["dets"] = det_list_json(*a.projection_dets);
        proj["norm"] = *a.projection_value;
        if (a.projection_bound) {
            proj["xi"] = a.projection_bound->xi;
            proj["lower_bound"] = a.projection_bound->lower;
            proj["upper_bound"] = a.projection_bound->upper;
        }
        doc["projection"] = proj;
    }
    doc["reference_energies"] = {{"exact", reference_energy_exact},
                                 {"hf", reference_energy_hf}};
    if (a.quadrature_deviation)
        doc["quadrature_max_deviation"] = *a.quadrature_deviation;
    return doc;
}

std::string fmt(double v, const char* spec = "%.16g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

void flatten(const ordered_json& j, const std::string& prefix, std::ostringstream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array()) {
        int i = 1;
        for (const auto& v : j) {
            flatten(v, prefix + "." + std::to_string(i), out);
            ++i;
        }
    } else {
        out << prefix << "," << j.dump() << "\n";
    }
}

} // namespace

std::string render_json(const RankAnalysis& a) { return document(a).dump(2) + "\n"; }

std::string render_csv(const RankAnalysis& a) {
    std::ostringstream out;
    out << "key,value\n";
    flatten(document(a), "", out);
    return out.str();
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r\n");
        const auto b = s.find_last_not_of(" \t\r\n");
        return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line without '=': " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line with empty key");
        kv[key] = value;
    }
    return kv;
}

namespace {

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

} // namespace

int cmd_solve(const RunConfig& config) {
    try {
        const RankAnalysis a = analyze(config);
        write_output(config.out,
                     config.format == RunConfig::Format::json ? render_json(a) : render_csv(a));
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

int cmd_zscan(const RunConfig& config) {
    if (config.z_min < 3 || config.z_max > 12 || config.z_min > config.z_max) {
        std::cerr << "error: zscan requires 3 <= z-min <= z-max <= 12\n";
        return 2;
    }
    struct Row {
        int z;
        bool ok = false;
        double alpha = 0, gamma = 0, energy = 0, delta = 0, lambda6 = 0, ratio = 0;
        std::string error;
    };

    auto run_one = [&](int z) {
        Row row;
        row.z = z;
        try {
            SolveResult r = optimize_screening(config.rank, z);
            const RankAnalysis a = analyze_state(r.state);
            row.alpha = r.state.params.alpha;
            row.gamma = r.state.params.gamma;
            row.energy = r.state.energy;
            for (const auto& v : a.constraints.values)
                if (v.id == "d") {
                    row.delta = v.delta;
                    row.ratio = v.ratio.value_or(0.0);
                }
            row.lambda6 = a.spectrum.lambdas.back();
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        return row;
    };

    // independent Z values fan out; rows are assembled in ascending order
    std::vector<std::future<Row>> futures;
    for (int z = config.z_min; z <= config.z_max; ++z)
        futures.push_back(std::async(std::launch::async, run_one, z));

    std::ostringstream out;
    out << "z,alpha,gamma,energy,delta,lambda6,delta_over_lambda6,error\n";
    bool any_failed = false;
    for (auto& f : futures) {
        const Row row = f.get();
        if (row.ok) {
            out << row.z << "," << fmt(row.alpha) << "," << fmt(row.gamma) << ","
                << fmt(row.energy) << "," << fmt(row.delta) << "," << fmt(row.lambda6) << ","
                << fmt(row.ratio) << ",\n";
        } else {
            out << row.z << ",,,,,,," << row.error << "\n";
            any_failed = true;
        }
    }
    try {
        write_output(config.out, out.str());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return any_failed ? 3 : 0;
}

int cmd_tables(const RunConfig& config) {
    namespace fs = std::filesystem;
    try {
        const fs::path dir = config.out.empty() ? fs::path(".") : fs::path(config.out);
        fs::create_directories(dir);

        auto energy_fmt = [](double e) { return fmt(e, "%.6f"); };

        std::map<RankId, RankAnalysis> results;
        for (RankId rank : {RankId::r3s, RankId::r3d, RankId::r3p, RankId::r5, RankId::r6a,
                            RankId::r6b, RankId::r7, RankId::r8}) {
            RunConfig rc;
            rc.rank = rank;
            rc.z = 3;
            rc.optimize = true;
            results.emplace(rank, analyze(rc));
        }

        {
            std::ostringstream t1;
            t1 << "conf,energy_hartree,alpha,gamma\n";
            t1 << "exact," << energy_fmt(reference_energy_exact) << ",,\n";
            t1 << "hf," << energy_fmt(reference_energy_hf) << ",,\n";
            for (RankId rank : {RankId::r3s, RankId::r3d, RankId::r3p}) {
                const auto& a = results.at(rank);
                t1 << rank_name(rank) << "," << energy_fmt(a.state.energy) << ","
                   << fmt(a.state.params.alpha) << "," << fmt(a.state.params.gamma) << "\n";
            }
            write_output((dir / "table1.csv").string(), t1.str());
        }
        {
            std::ostringstream t2;
            t2 << "rank,energy_hartree,alpha,gamma\n";
            for (RankId rank :
                 {RankId::r3p, RankId::r5, RankId::r6a, RankId::r6b, RankId::r7, RankId::r8}) {
                const auto& a = results.at(rank);
                t2 << (rank == RankId::r3p ? "3" : rank_name(rank)) << ","
                   << energy_fmt(a.state.energy) << "," << fmt(a.state.params.alpha) << ","
                   << fmt(a.state.params.gamma) << "\n";
            }
            write_output((dir / "table2.csv").string(), t2.str());
        }
        {
            std::ostringstream t3;
            t3 << "rank,lambda1,lambda2,lambda3,lambda4,lambda5,lambda6,lambda7,lambda8\n";
            for (RankId rank :
                 {RankId::r5, RankId::r6a, RankId::r6b, RankId::r7, RankId::r8}) {
                const auto& a = results.at(rank);
                t3 << rank_name(rank);
                for (int i = 0; i < 8; ++i)
                    t3 << ","
                       << (i < a.spectrum.rank() ? fmt(a.spectrum.lambdas[i]) : std::string{});
                t3 << "\n";
            }
            write_output((dir / "table3.csv").string(), t3.str());
        }
        {
            std::ostringstream t4;
            t4 << "id,value\n";
            for (const auto& v : results.at(RankId::r8).constraints.values)
                t4 << v.id << "," << fmt(v.delta) << "\n";
            write_output((dir / "table4.csv").string(), t4.str());
        }
        {
            std::ostringstream poly;
            poly << "rank,lambda1,lambda2,lambda3,margin\n";
            for (RankId rank :
                 {RankId::r5, RankId::r6a, RankId::r6b, RankId::r7, RankId::r8}) {
                const auto& s = results.at(rank).spectrum;
                const double margin = 1.0 + s.lambdas[2] - s.lambdas[0] - s.lambdas[1];
                poly << rank_name(rank) << "," << fmt(s.lambdas[0]) << "," << fmt(s.lambdas[1])
                     << "," << fmt(s.lambdas[2]) << "," << fmt(margin) << "\n";
            }
            write_output((dir / "polytope.csv").string(), poly.str());
        }
        {
            std::ostringstream dims;
            dims << "rank,saturated,dimension\n";
            dims << "5,structural," << selection_rule_dets(5, {"structural"}).size() << "\n";
            dims << "6,bd1+bd2+bd3+d,"
                 << selection_rule_dets(6, {"bd1", "bd2", "bd3", "d"}).size() << "\n";
            for (int rank : {7, 8}) {
                const std::vector<std::vector<std::string>> stages = {
                    {"d1", "d2"}, {"d1", "d2", "d3"}, {"d1", "d2", "d4"}, {"d1", "d2", "d3", "d4"}};
                for (const auto& ids : stages) {
                    std::string label;
                    for (const auto& id : ids)
                        label += (label.empty() ? "" : "+") + id;
                    dims << rank << "," << label << "," << selection_rule_dets(rank, ids).size()
                         << "\n";
                }
            }
            write_output((dir / "dimensions.csv").string(), dims.str());
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace qpin
