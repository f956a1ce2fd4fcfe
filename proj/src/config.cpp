#include "gcdd/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gcdd {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_line(int line, const std::string& msg) {
    throw std::invalid_argument("line " + std::to_string(line) + ": " + msg);
}

double parse_double_strict(const std::string& text, const std::string& path, int line) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v))
        fail_line(line, path + ": not a number ('" + text + "')");
    return v;
}

long parse_int_strict(const std::string& text, const std::string& path, int line) {
    const char* begin = text.c_str();
    char* end = nullptr;
    long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0')
        fail_line(line, path + ": not an integer ('" + text + "')");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    if (!text.empty() && text.back() == sep) out.push_back("");
    return out;
}

Matrix parse_matrix_value(const std::string& text, const std::string& path, int line) {
    std::vector<std::vector<cplx>> rows;
    for (const std::string& row_text : split(text, ';')) {
        std::vector<cplx> row;
        std::stringstream ss(row_text);
        std::string tok;
        while (ss >> tok) {
            try {
                row.push_back(parse_complex(tok));
            } catch (const std::invalid_argument& e) {
                fail_line(line, path + ": " + e.what());
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) fail_line(line, path + ": empty matrix");
    std::size_t dim = rows.size();
    for (const auto& row : rows)
        if (row.size() != dim) fail_line(line, path + ": matrix must be square");
    Matrix M(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) M(r, c) = rows[r][c];
    return M;
}

}  // namespace

cplx parse_complex(const std::string& raw) {
    std::string s = trim(raw);
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    bool has_i = (s.back() == 'i' || s.back() == 'I');
    std::string body = has_i ? s.substr(0, s.size() - 1) : s;

    auto to_double = [&raw](const std::string& text) {
        if (text.empty() || text == "+") return 1.0;
        if (text == "-") return -1.0;
        const char* begin = text.c_str();
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin || *end != '\0')
            throw std::invalid_argument("bad complex literal '" + raw + "'");
        return v;
    };

    // find the +/- separating real and imaginary parts (skip exponent signs)
    std::size_t cut = std::string::npos;
    for (std::size_t p = 1; p < body.size(); ++p) {
        char ch = body[p];
        if ((ch == '+' || ch == '-') && body[p - 1] != 'e' && body[p - 1] != 'E')
            cut = p;
    }
    if (!has_i) {
        if (cut != std::string::npos)
            throw std::invalid_argument("bad complex literal '" + raw + "' (missing i)");
        return cplx(to_double(body), 0.0);
    }
    if (cut == std::string::npos) return cplx(0.0, to_double(body));
    return cplx(to_double(body.substr(0, cut)), to_double(body.substr(cut)));
}

RunMode parse_mode(const std::string& name) {
    if (name == "check-decoupling") return RunMode::CheckDecoupling;
    if (name == "run") return RunMode::Run;
    if (name == "sweep") return RunMode::Sweep;
    if (name == "export-schedule") return RunMode::ExportSchedule;
    if (name == "feasibility") return RunMode::Feasibility;
    throw std::invalid_argument(
        "mode: unknown mode '" + name +
        "' (expected check-decoupling, run, sweep, export-schedule or feasibility)");
}

std::string mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::CheckDecoupling: return "check-decoupling";
        case RunMode::Run: return "run";
        case RunMode::Sweep: return "sweep";
        case RunMode::ExportSchedule: return "export-schedule";
        case RunMode::Feasibility: return "feasibility";
    }
    return "?";
}

RunConfig preset_fig2() {
    RunConfig cfg;  // defaults are the fig2 values
    cfg.has_gate = true;
    validate_config(cfg);
    return cfg;
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    cfg.n_steps = 0;  // files default to auto grid sizing unless set
    std::set<std::string> seen;
    std::string section;

    std::stringstream stream(text);
    std::string raw;
    int line = 0;
    while (std::getline(stream, raw)) {
        ++line;
        std::string s = raw;
        std::size_t hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;

        if (s.front() == '[') {
            if (s.back() != ']') fail_line(line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            static const std::set<std::string> known{
                "run", "frame", "gate", "bath", "grid", "sweep", "rb87"};
            if (!known.count(section)) fail_line(line, "unknown section '" + section + "'");
            continue;
        }

        std::size_t eq = s.find('=');
        if (eq == std::string::npos) fail_line(line, "expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (section.empty()) fail_line(line, "key '" + key + "' outside any section");
        std::string path = section + "." + key;
        if (!seen.insert(path).second) fail_line(line, "duplicate key '" + path + "'");
        if (value.empty()) fail_line(line, path + ": empty value");

        if (path == "run.mode") {
            try {
                cfg.mode = parse_mode(value);
            } catch (const std::invalid_argument& e) {
                fail_line(line, std::string("run.") + e.what());
            }
        } else if (path == "run.out") {
            cfg.out_dir = value;
        } else if (path == "run.seed") {
            cfg.seed = parse_int_strict(value, path, line);
        } else if (path == "run.jobs") {
            cfg.jobs = static_cast<int>(parse_int_strict(value, path, line));
        } else if (path == "run.initial_state") {
            cfg.initial_state = static_cast<int>(parse_int_strict(value, path, line));
        } else if (path == "frame.d") {
            cfg.d = static_cast<int>(parse_int_strict(value, path, line));
        } else if (path == "frame.n_periods") {
            cfg.n_periods = static_cast<int>(parse_int_strict(value, path, line));
        } else if (path == "gate.name") {
            cfg.has_gate = true;
            cfg.gate_name = value;
        } else if (path == "gate.tau") {
            cfg.has_gate = true;
            cfg.tau = parse_double_strict(value, path, line);
        } else if (path == "gate.matrix") {
            cfg.has_gate = true;
            cfg.gate_matrix = parse_matrix_value(value, path, line);
        } else if (path == "bath.lambda_damp_m1") {
            cfg.lambda_damp_m1 = parse_double_strict(value, path, line);
        } else if (path == "bath.lambda_damp_p1") {
            cfg.lambda_damp_p1 = parse_double_strict(value, path, line);
        } else if (path == "bath.lambda_deph_m1") {
            cfg.lambda_deph_m1 = parse_double_strict(value, path, line);
        } else if (path == "bath.lambda_deph_p1") {
            cfg.lambda_deph_p1 = parse_double_strict(value, path, line);
        } else if (path == "bath.alpha") {
            cfg.alpha = parse_double_strict(value, path, line);
        } else if (path == "bath.tau_c") {
            cfg.tau_c = parse_double_strict(value, path, line);
        } else if (path == "bath.beta_omega_c") {
            cfg.beta_omega_c = parse_double_strict(value, path, line);
        } else if (path == "grid.n_steps") {
            cfg.n_steps = static_cast<int>(parse_int_strict(value, path, line));
        } else if (path == "grid.memory_window") {
            if (value == "full")
                cfg.memory_window = 0.0;
            else
                cfg.memory_window = parse_double_strict(value, path, line);
        } else if (path == "sweep.n_values") {
            cfg.n_values.clear();
            for (const std::string& item : split(value, ','))
                cfg.n_values.push_back(
                    static_cast<int>(parse_int_strict(item, path, line)));
        } else if (path == "rb87.physical_t0_s") {
            cfg.physical_t0_s = parse_double_strict(value, path, line);
        } else if (path == "rb87.delta_ghz") {
            auto items = split(value, ',');
            if (items.size() != 3) fail_line(line, path + ": expected three values");
            for (int s3 = 0; s3 < 3; ++s3)
                cfg.delta_ghz[static_cast<std::size_t>(s3)] =
                    parse_double_strict(items[static_cast<std::size_t>(s3)], path, line);
        } else {
            fail_line(line, "unknown key '" + path + "'");
        }
    }

    validate_config(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("load_config: cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

void validate_config(const RunConfig& cfg) {
    auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };

    if (cfg.d < 2) fail("frame.d: must be at least 2");
    if (cfg.n_periods < 1) fail("frame.n_periods: must be at least 1");
    if (cfg.jobs < 0) fail("run.jobs: must be non-negative");
    if (cfg.out_dir.empty()) fail("run.out: must not be empty");
    if (cfg.initial_state < 0 || cfg.initial_state >= cfg.d)
        fail("run.initial_state: must be a logical index in [0, d)");

    const bool needs_gate = cfg.mode != RunMode::CheckDecoupling;
    if (needs_gate && !cfg.has_gate)
        fail("gate: block required for mode '" + mode_name(cfg.mode) + "'");
    if (cfg.has_gate) {
        if (!(cfg.tau > 0.0)) fail("gate.tau: must be positive");
        if (cfg.gate_name == "hadamard") {
            if (cfg.d != 3) fail("gate.name: 'hadamard' requires frame.d = 3");
        } else if (cfg.gate_name == "custom") {
            if (cfg.gate_matrix.rows() == 0) fail("gate.matrix: required for custom gates");
            if (cfg.gate_matrix.rows() != cfg.d)
                fail("gate.matrix: dimension does not match frame.d");
            try {
                require_hermitian(cfg.gate_matrix, "gate.matrix");
            } catch (const std::invalid_argument& e) {
                fail(e.what());
            }
        } else {
            fail("gate.name: unknown gate '" + cfg.gate_name +
                 "' (expected 'hadamard' or 'custom')");
        }
    }

    if (!(cfg.tau_c > 0.0)) fail("bath.tau_c: must be positive");
    if (!(cfg.beta_omega_c > 0.0)) fail("bath.beta_omega_c: must be positive");
    if (cfg.alpha < 0.0) fail("bath.alpha: must be non-negative");
    for (double lam : {cfg.lambda_damp_m1, cfg.lambda_damp_p1, cfg.lambda_deph_m1,
                       cfg.lambda_deph_p1})
        if (!std::isfinite(lam)) fail("bath: coupling values must be finite");

    if (cfg.n_steps != 0 && cfg.n_steps < 100)
        fail("grid.n_steps: must be 0 (auto) or at least 100");
    if (cfg.memory_window && *cfg.memory_window < 0.0)
        fail("grid.memory_window: must be 'full' or non-negative");

    if (cfg.n_values.empty()) fail("sweep.n_values: must not be empty");
    std::set<int> uniq;
    for (int n : cfg.n_values) {
        if (n < 1) fail("sweep.n_values: entries must be at least 1");
        if (!uniq.insert(n).second)
            fail("sweep.n_values: duplicate entry " + std::to_string(n));
    }

    // tau must hold an integer number of control periods: tau/t0 = n tau/tau_c.
    auto check_integrality = [&](int n, const std::string& path) {
        double ratio = cfg.tau * n / cfg.tau_c;
        if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
            fail(path + ": n = " + std::to_string(n) + " gives tau/t0 = " +
                 std::to_string(ratio) + ", not an integer");
    };
    if (cfg.has_gate) {
        if (cfg.mode == RunMode::Sweep)
            for (int n : cfg.n_values) check_integrality(n, "sweep.n_values");
        else if (cfg.mode != RunMode::CheckDecoupling)
            check_integrality(cfg.n_periods, "frame.n_periods");
    }

    if (!(cfg.physical_t0_s > 0.0)) fail("rb87.physical_t0_s: must be positive");
    double max_abs = 0.0;
    for (double dg : cfg.delta_ghz) {
        if (!(dg < 0.0)) fail("rb87.delta_ghz: detunings must be negative");
        max_abs = std::max(max_abs, std::abs(dg));
    }
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            if (std::abs(cfg.delta_ghz[static_cast<std::size_t>(a)] -
                         cfg.delta_ghz[static_cast<std::size_t>(b)]) < 0.1 * max_abs)
                fail("rb87.delta_ghz: detunings must differ pairwise by at least "
                     "0.1 * max|Delta|");
}

BathConfig bath_from_config(const RunConfig& cfg) {
    BathConfig bath;
    bath.lambda_damp_m1 = cfg.lambda_damp_m1;
    bath.lambda_damp_p1 = cfg.lambda_damp_p1;
    bath.lambda_deph_m1 = cfg.lambda_deph_m1;
    bath.lambda_deph_p1 = cfg.lambda_deph_p1;
    bath.alpha = cfg.alpha;
    bath.omega_c = 2.0 * kPi / cfg.tau_c;
    bath.beta = cfg.beta_omega_c / bath.omega_c;
    return bath;
}

Vector initial_state_vector(const RunConfig& cfg) {
    Vector psi = Vector::Zero(cfg.d);
    psi[cfg.initial_state] = 1.0;
    return psi;
}

}  // namespace gcdd
