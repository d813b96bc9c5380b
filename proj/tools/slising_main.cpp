#include "slising/slising.h"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

// Exit codes: 0 pass, 1 property failure, 2 input error, 3 cap refusal.
enum ExitCode { EXIT_PASS = 0, EXIT_PROPERTY = 1, EXIT_INPUT = 2, EXIT_CAP = 3 };

int exit_for(slising_status st) {
    switch (st) {
        case SLISING_OK: return EXIT_PASS;
        case SLISING_ERR_INVALID_INPUT:
        case SLISING_ERR_DOMAIN: return EXIT_INPUT;
        case SLISING_ERR_CAP_EXCEEDED: return EXIT_CAP;
        default: return EXIT_PROPERTY;
    }
}

[[noreturn]] void fail(slising_status st) {
    std::cerr << "error: " << slising_last_error() << "\n";
    std::exit(exit_for(st));
}

void check(slising_status st) {
    if (st != SLISING_OK) fail(st);
}

// Floats are serialized with 15 significant digits so identical runs give
// byte-identical output.
std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

struct Record {
    std::string observable;
    std::string method;
    std::string graph;
    std::optional<double> beta;
    double value = 0.0;
    std::optional<double> error_bound;
    std::optional<double> runtime_ms;
};

std::string to_json(const std::vector<Record>& records) {
    std::ostringstream out;
    out << "[\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const Record& r = records[i];
        out << "  {\"observable\": \"" << r.observable << "\", \"method\": \"" << r.method
            << "\", \"graph\": \"" << r.graph << "\"";
        if (r.beta) out << ", \"beta\": " << num(*r.beta);
        out << ", \"value\": " << num(r.value);
        if (r.error_bound) out << ", \"error_bound\": " << num(*r.error_bound);
        if (r.runtime_ms) out << ", \"runtime_ms\": " << num(*r.runtime_ms);
        out << "}" << (i + 1 < records.size() ? "," : "") << "\n";
    }
    out << "]\n";
    return out.str();
}

std::string to_csv(const std::vector<Record>& records) {
    std::ostringstream out;
    out << "observable,method,graph,beta,value,error_bound\n";
    for (const Record& r : records) {
        out << r.observable << ',' << r.method << ',' << r.graph << ','
            << (r.beta ? num(*r.beta) : "") << ',' << num(r.value) << ','
            << (r.error_bound ? num(*r.error_bound) : "") << "\n";
    }
    return out.str();
}

void write_output(const std::vector<Record>& records, const std::string& out_path) {
    const bool csv = out_path.size() > 4 && out_path.substr(out_path.size() - 4) == ".csv";
    const std::string text = csv ? to_csv(records) : to_json(records);
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << out_path << "\n";
            std::exit(EXIT_INPUT);
        }
        f << text;
        std::cout << "wrote " << records.size() << " records to " << out_path << "\n";
    }
}

std::vector<double> parse_beta_grid(const std::string& text) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        double a, step, b;
        char c1, c2;
        std::istringstream in(text);
        if (!(in >> a >> c1 >> step >> c2 >> b) || c1 != ':' || c2 != ':' || step <= 0) {
            std::cerr << "error: bad beta grid '" << text << "' (want start:step:end)\n";
            std::exit(EXIT_INPUT);
        }
        for (double x = a; x <= b + 1e-12; x += step) grid.push_back(x);
    } else {
        std::istringstream in(text);
        std::string tok;
        while (std::getline(in, tok, ',')) grid.push_back(std::stod(tok));
    }
    if (grid.empty()) {
        std::cerr << "error: empty beta grid\n";
        std::exit(EXIT_INPUT);
    }
    return grid;
}

std::pair<int, int> parse_pair(const std::string& text, const char* what) {
    int a, b;
    char c;
    std::istringstream in(text);
    if (!(in >> a >> c >> b) || c != ',') {
        std::cerr << "error: bad " << what << " '" << text << "' (want x,y)\n";
        std::exit(EXIT_INPUT);
    }
    return {a, b};
}

slising_graph* graph_from_source(const std::string& source) {
    slising_graph* g = nullptr;
    if (source.rfind("rect:", 0) == 0) {
        int w, h;
        if (std::sscanf(source.c_str(), "rect:%dx%d", &w, &h) != 2) {
            std::cerr << "error: bad rectangle spec '" << source << "'\n";
            std::exit(EXIT_INPUT);
        }
        check(slising_graph_rectangle(w, h, &g));
    } else if (source.rfind("torus:", 0) == 0) {
        int m, n;
        if (std::sscanf(source.c_str(), "torus:%dx%d", &m, &n) != 2) {
            std::cerr << "error: bad torus spec '" << source << "'\n";
            std::exit(EXIT_INPUT);
        }
        check(slising_graph_torus(m, n, &g));
    } else {
        std::ifstream f(source);
        if (!f) {
            std::cerr << "error: cannot read " << source << "\n";
            std::exit(EXIT_INPUT);
        }
        std::stringstream buf;
        buf << f.rdbuf();
        check(slising_graph_from_json(buf.str().c_str(), &g));
    }
    return g;
}

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

int cmd_verify(const std::string& suite, const std::string& out_path) {
    char* report = nullptr;
    int32_t pass = 0;
    check(slising_verify(suite.c_str(), &report, &pass));
    if (out_path.empty() || out_path == "-") {
        std::cout << report << "\n";
    } else {
        std::ofstream f(out_path, std::ios::binary);
        f << report << "\n";
        std::cout << "suite '" << suite << "': " << (pass ? "PASS" : "FAIL") << " (report in "
                  << out_path << ")\n";
    }
    slising_string_free(report);
    return pass ? EXIT_PASS : EXIT_PROPERTY;
}

int cmd_free_energy(const std::string& grid_text, const std::string& method, int r_max,
                    const std::string& out_path, bool timing) {
    const auto grid = parse_beta_grid(grid_text);
    double beta_c = 0.0;
    check(slising_beta_critical(&beta_c));

    const bool want_onsager = method == "onsager" || method == "both";
    const bool want_series = method == "series" || method == "both";
    if (!want_onsager && !want_series) {
        std::cerr << "error: method must be onsager, series or both\n";
        return EXIT_INPUT;
    }
    if (want_series)
        for (double b : grid)
            if (std::fabs(b - beta_c) < 1e-3) {
                std::cerr << "error: series method needs the grid to avoid beta_c = "
                          << num(beta_c) << " by at least 1e-3\n";
                return EXIT_INPUT;
            }

    std::vector<Record> records;
    bool agree = true;
    for (double beta : grid) {
        double v_ons = 0.0, e_ons = 0.0, v_ser = 0.0, tail = 0.0;
        if (want_onsager) {
            const double t0 = now_ms();
            check(slising_free_energy_onsager(beta, &v_ons, &e_ons));
            Record r{"free_energy", "onsager", "z2", beta, v_ons, e_ons, std::nullopt};
            if (timing) r.runtime_ms = now_ms() - t0;
            records.push_back(r);
        }
        if (want_series) {
            const double t0 = now_ms();
            check(slising_free_energy_series(beta, r_max, &v_ser, &tail));
            Record r{"free_energy", "series", "z2", beta, v_ser, tail, std::nullopt};
            if (timing) r.runtime_ms = now_ms() - t0;
            records.push_back(r);
        }
        if (want_onsager && want_series && std::fabs(v_ons - v_ser) > tail + e_ons + 1e-8) {
            std::cerr << "disagreement at beta=" << num(beta) << ": onsager=" << num(v_ons)
                      << " series=" << num(v_ser) << " tail=" << num(tail) << "\n";
            agree = false;
        }
    }
    write_output(records, out_path);
    return agree ? EXIT_PASS : EXIT_PROPERTY;
}

int cmd_correlate(const std::string& bc, const std::string& u_text, const std::string& v_text,
                  double beta, const std::string& sizes_text, const std::string& out_path,
                  bool timing) {
    const auto [ux, uy] = parse_pair(u_text, "--u");
    const auto [vx, vy] = parse_pair(v_text, "--v");
    std::vector<int> sizes;
    {
        std::istringstream in(sizes_text);
        std::string tok;
        while (std::getline(in, tok, ',')) sizes.push_back(std::stoi(tok));
    }
    double beta_c = 0.0;
    check(slising_beta_critical(&beta_c));

    std::vector<Record> records;
    bool agree = true;
    for (int size : sizes) {
        slising_graph* g = nullptr;
        check(slising_graph_rectangle(size, size, &g));
        const std::string gname = "rect:" + std::to_string(size) + "x" + std::to_string(size);
        const std::string obs = std::string("two_point_") + bc;

        auto eval = [&](slising_backend backend, int route, double* out) {
            if (bc == "plus")
                return slising_two_point_plus(g, beta, ux, uy, vx, vy, backend, route, out);
            return slising_two_point_free(g, beta, ux, uy, vx, vy, backend, route, out);
        };

        double v_enum = 0.0;
        {
            const double t0 = now_ms();
            check(eval(SLISING_BACKEND_ENUMERATION, 0, &v_enum));
            Record r{obs, "enumeration", gname, beta, v_enum, std::nullopt, std::nullopt};
            if (timing) r.runtime_ms = now_ms() - t0;
            records.push_back(r);
        }
        // Path independence of the auxiliary route.
        double v_route = 0.0;
        check(eval(SLISING_BACKEND_ENUMERATION, 1, &v_route));
        if (std::fabs(v_route - v_enum) > 1e-12) {
            std::cerr << "route dependence at size " << size << ": " << num(v_enum) << " vs "
                      << num(v_route) << "\n";
            agree = false;
        }
        // Determinant backend when its certification holds.
        double v_det = 0.0;
        const slising_status st = eval(SLISING_BACKEND_DETERMINANT, 0, &v_det);
        if (st == SLISING_OK) {
            records.push_back(Record{obs, "determinant", gname, beta, v_det, std::nullopt,
                                     std::nullopt});
            if (std::fabs(v_det - v_enum) > 1e-9) {
                std::cerr << "backend disagreement at size " << size << ": enum=" << num(v_enum)
                          << " det=" << num(v_det) << "\n";
                agree = false;
            }
        } else if (st != SLISING_ERR_DOMAIN) {
            fail(st);
        }
        if (bc == "free" && beta < beta_c) {
            double value = 0.0, bound = 0.0;
            int32_t pass = 0;
            check(slising_decay_bound(g, beta, ux, uy, vx, vy, &value, &bound, &pass));
            records.push_back(
                Record{"decay_bound", "corollary", gname, beta, bound, std::nullopt, std::nullopt});
            if (!pass) {
                std::cerr << "decay bound violated at size " << size << "\n";
                agree = false;
            }
        }
        slising_graph_free(g);
    }
    write_output(records, out_path);
    return agree ? EXIT_PASS : EXIT_PROPERTY;
}

int cmd_partition(const std::string& source, double beta, const std::string& backend_name,
                  const std::string& bc_name, const std::string& weights_path,
                  const std::string& out_path, bool timing) {
    const slising_backend backend =
        backend_name == "det" ? SLISING_BACKEND_DETERMINANT : SLISING_BACKEND_ENUMERATION;
    slising_graph* g = graph_from_source(source);
    std::vector<Record> records;
    const double t0 = now_ms();
    if (!weights_path.empty()) {
        std::ifstream f(weights_path);
        if (!f) {
            std::cerr << "error: cannot read " << weights_path << "\n";
            return EXIT_INPUT;
        }
        std::stringstream buf;
        buf << f.rdbuf();
        slising_weights* w = nullptr;
        check(slising_weights_from_json(g, buf.str().c_str(), &w));
        double z = 0.0;
        check(slising_generating_function(g, w, backend, &z));
        slising_weights_free(w);
        Record r{"generating_function", backend_name, source, std::nullopt, z, std::nullopt,
                 std::nullopt};
        if (timing) r.runtime_ms = now_ms() - t0;
        records.push_back(r);
    } else {
        double z = 0.0;
        check(slising_partition_function(
            g, beta, bc_name == "plus" ? SLISING_BC_PLUS : SLISING_BC_FREE, backend, &z));
        Record r{std::string("partition_") + bc_name, backend_name, source, beta, z,
                 std::nullopt, std::nullopt};
        if (timing) r.runtime_ms = now_ms() - t0;
        records.push_back(r);
    }
    slising_graph_free(g);
    write_output(records, out_path);
    return EXIT_PASS;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"signed-loop Ising toolkit"};
    app.require_subcommand(1);

    std::string suite = "all", out_path, beta_grid = "0.1:0.05:0.9", method = "both";
    std::string bc = "plus", u_text = "1,1", v_text = "2,2", sizes = "3,4,5";
    std::string source, backend_name = "enum", bc_name = "free", weights_path;
    double beta = 0.5;
    int r_max = 12;
    bool timing = false;
    app.add_flag("--timing", timing, "include runtime_ms in records (non-deterministic field)");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite, "identities|cancellation|bijection|norms|all");
    verify->add_option("--out", out_path, "report path (default stdout)");

    auto* fe = app.add_subcommand("free-energy", "free energy density -beta f(beta)");
    fe->add_option("--beta", beta_grid, "grid start:step:end or comma list");
    fe->add_option("--method", method, "onsager|series|both");
    fe->add_option("--r-max", r_max, "series truncation length");
    fe->add_option("--out", out_path, "output path (.csv or .json)");

    auto* corr = app.add_subcommand("correlate", "two-point functions on square boxes");
    corr->add_option("--bc", bc, "plus|free");
    corr->add_option("--u", u_text, "first vertex as x,y offsets");
    corr->add_option("--v", v_text, "second vertex as x,y offsets");
    corr->add_option("--beta", beta, "inverse temperature")->required();
    corr->add_option("--sizes", sizes, "comma list of box sizes");
    corr->add_option("--out", out_path, "output path (.csv or .json)");

    auto* part = app.add_subcommand("partition", "partition / generating function");
    part->add_option("--graph", source, "rect:WxH | torus:MxN | graph JSON path")->required();
    part->add_option("--beta", beta, "inverse temperature");
    part->add_option("--backend", backend_name, "enum|det");
    part->add_option("--bc", bc_name, "free|plus");
    part->add_option("--weights", weights_path, "weights JSON (emit Z(x) instead)");
    part->add_option("--out", out_path, "output path (.csv or .json)");

    CLI11_PARSE(app, argc, argv);

    if (verify->parsed()) return cmd_verify(suite, out_path);
    if (fe->parsed()) return cmd_free_energy(beta_grid, method, r_max, out_path, timing);
    if (corr->parsed()) return cmd_correlate(bc, u_text, v_text, beta, sizes, out_path, timing);
    if (part->parsed())
        return cmd_partition(source, beta, backend_name, bc_name, weights_path, out_path, timing);
    return EXIT_INPUT;
}
