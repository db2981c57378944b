// Copyright 2026 The spindigit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spindigit/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "ini.hpp"
#include "spindigit/error.hpp"

namespace spindigit {

namespace {

constexpr double kPi = u3::kPi;

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string trim(const std::string &s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            throw ValidationError("empty entry in list '" + text + "'");
        }
        out.push_back(item);
    }
    if (out.empty()) {
        throw ValidationError("empty list");
    }
    return out;
}

double parse_real(const std::string &key, const std::string &text) {
    double v = 0.0;
    const auto s = trim(text);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw ValidationError("config key '" + key + "': '" + text +
                              "' is not a number");
    }
    return v;
}

std::uint64_t parse_unsigned(const std::string &key, const std::string &text) {
    std::uint64_t v = 0;
    const auto s = trim(text);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw ValidationError("config key '" + key + "': '" + text +
                              "' is not a non-negative integer");
    }
    return v;
}

Topology ising_topology(const std::string &model) {
    const auto spec = model_from_name(model);
    if (const auto *ising = std::get_if<IsingSpec>(&spec)) {
        return ising->topology;
    }
    throw ValidationError("'" + model + "' is not an Ising model");
}

std::vector<double> standard_phases() {
    return {0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi};
}

std::string render_noise(const NoiseModel &m) {
    std::ostringstream out;
    out << "p_cnot=" << format_number(m.p_cnot)
        << ";p_u3=" << format_number(m.p_u3) << ";t1=" << format_number(m.t1)
        << ";t2=" << format_number(m.t2)
        << ";dur_u3=" << format_number(m.dur_u3)
        << ";dur_cnot=" << format_number(m.dur_cnot) << ";readout=";
    for (double v : m.readout) {
        out << format_number(v) << ' ';
    }
    for (const auto &[e, p] : m.p_cnot_edge) {
        out << ";p_cnot." << e.first << '-' << e.second << '='
            << format_number(p);
    }
    const auto per_qubit = [&](const char *name,
                               const std::map<std::size_t, double> &values) {
        for (const auto &[q, v] : values) {
            out << ';' << name << '.' << q << '=' << format_number(v);
        }
    };
    per_qubit("p_u3", m.p_u3_qubit);
    per_qubit("t1", m.t1_qubit);
    per_qubit("t2", m.t2_qubit);
    for (const auto &[q, r] : m.readout_qubit) {
        out << ";readout." << q << '=';
        for (double v : r) {
            out << format_number(v) << ' ';
        }
    }
    return out.str();
}

} // namespace

std::string postprocess_name(Postprocess p) {
    switch (p) {
    case Postprocess::None:
        return "none";
    case Postprocess::DeltaN:
        return "delta-n";
    case Postprocess::VMax:
        return "v-max";
    case Postprocess::VMean:
        return "v-mean";
    }
    return "none";
}

Postprocess parse_postprocess(const std::string &name) {
    for (auto p : {Postprocess::None, Postprocess::DeltaN, Postprocess::VMax,
                   Postprocess::VMean}) {
        if (postprocess_name(p) == name) {
            return p;
        }
    }
    throw ValidationError("unknown postprocess '" + name +
                          "' (valid: none, delta-n, v-max, v-mean)");
}

double parse_angle(const std::string &raw) {
    std::string s;
    for (char c : raw) {
        if (c != ' ' && c != '\t') {
            s += c;
        }
    }
    const auto pos = s.find("pi");
    if (pos == std::string::npos) {
        return parse_real("angle", s);
    }
    std::string coeff = s.substr(0, pos);
    std::string rest = s.substr(pos + 2);
    if (!coeff.empty() && coeff.back() == '*') {
        coeff.pop_back();
    }
    double factor = 1.0;
    if (coeff == "-") {
        factor = -1.0;
    } else if (!coeff.empty() && coeff != "+") {
        factor = parse_real("angle", coeff);
    }
    double value = factor * kPi;
    if (!rest.empty()) {
        if (rest.front() != '/') {
            throw ValidationError("cannot parse angle '" + raw + "'");
        }
        const double den = parse_real("angle", rest.substr(1));
        if (den == 0.0) {
            throw ValidationError("division by zero in angle '" + raw + "'");
        }
        value /= den;
    }
    return value;
}

std::string fnv1a_hex(const std::string &text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

NoiseModel ExperimentConfig::noise_model() const {
    if (inline_noise) {
        return *inline_noise;
    }
    const auto names = noise_preset_names();
    if (std::find(names.begin(), names.end(), noise) != names.end()) {
        return noise_preset(noise);
    }
    return load_noise_model(noise);
}

std::vector<ExperimentSpec> ExperimentConfig::curves() const {
    ExperimentSpec base;
    base.backend = backend;
    base.oracle_mode = oracle_mode;
    base.trotter_n = trotter_n;
    base.grid = grid;
    base.shots = shots;
    base.seed = seed;
    base.threads = threads;
    if (backend == Backend::Noisy) {
        base.noise = noise_model();
    }

    std::vector<ModelSpec> models;
    const bool central = model.starts_with("central-spin");
    if (central) {
        std::vector<std::size_t> sizes = bath_sizes;
        if (model.starts_with("central-spin:")) {
            sizes = {std::get<CentralSpinSpec>(model_from_name(model)).bath_size()};
        } else if (model != "central-spin") {
            throw ValidationError("unknown model '" + model + "'");
        }
        if (sizes.empty()) {
            throw ValidationError("no bath sizes given");
        }
        for (auto l : sizes) {
            if (layout == "hub") {
                models.emplace_back(CentralSpinSpec::hub(l));
            } else if (layout == "compact") {
                models.emplace_back(CentralSpinSpec::compact(l));
            } else {
                throw ValidationError("unknown layout '" + layout +
                                      "' (valid: hub, compact)");
            }
        }
    } else {
        Topology topology;
        if (model == "ising:graph") {
            topology.n_spins = spins;
            topology.edges = edges;
            topology.validate();
        } else {
            topology = ising_topology(model);
        }
        if (alphas.empty()) {
            throw ValidationError("no alpha values given");
        }
        for (double a : alphas) {
            models.emplace_back(IsingSpec{topology, coupling, a});
        }
    }

    std::vector<ExperimentSpec> out;
    for (const auto &m : models) {
        std::vector<InitialStateSpec> initials;
        if (initial == "2pes") {
            for (double p : phases) {
                initials.emplace_back(TwoPES{p});
            }
        } else if (initial == "3pes") {
            for (double p : phases) {
                initials.emplace_back(ThreePES{p});
            }
        } else if (initial == "central-excited") {
            if (!central) {
                throw ValidationError("central-excited needs the central-spin "
                                      "model");
            }
            initials.emplace_back(
                CentralExcited{std::get<CentralSpinSpec>(m).bath_size()});
        } else if (initial == "ferromagnetic") {
            initials.emplace_back(Ferromagnetic{});
        } else {
            throw ValidationError("unknown initial state '" + initial +
                                  "' (valid: 2pes, 3pes, central-excited, "
                                  "ferromagnetic)");
        }
        if (initials.empty()) {
            throw ValidationError("no phase values given");
        }
        for (const auto &i : initials) {
            ExperimentSpec spec = base;
            spec.model = m;
            spec.initial = i;
            spec.validate();
            out.push_back(std::move(spec));
        }
    }
    return out;
}

std::string ExperimentConfig::canonical_text() const {
    std::ostringstream out;
    out << "figure=" << figure << '\n'
        << "model=" << model << '\n'
        << "layout=" << layout << '\n'
        << "spins=" << spins << '\n'
        << "edges=";
    for (const auto &[a, b] : edges) {
        out << a << '-' << b << ',';
    }
    out << '\n'
        << "L=";
    for (auto l : bath_sizes) {
        out << l << ',';
    }
    out << "\nJ=" << format_number(coupling) << "\nalpha=";
    for (double a : alphas) {
        out << format_number(a) << ',';
    }
    out << "\ninitial=" << initial << "\nphase=";
    for (double p : phases) {
        out << format_number(p) << ',';
    }
    out << "\nbackend=" << backend_name(backend)
        << "\noracle_mode="
        << (oracle_mode == OracleMode::Exact ? "exact" : "trotter")
        << "\ntrotter_n=" << trotter_n
        << "\nt_start=" << format_number(grid.start)
        << "\nt_stop=" << format_number(grid.stop) << "\npoints=" << grid.points
        << "\nshots=" << shots << "\nseed=" << seed << "\nnoise=" << noise;
    if (inline_noise) {
        out << "\ninline_noise=" << render_noise(*inline_noise);
    }
    out << "\npostprocess=" << postprocess_name(postprocess) << '\n';
    return out.str();
}

std::vector<std::string> preset_names() {
    return {"fig8",  "fig9",  "fig10", "fig11",  "fig12",
            "fig14", "fig15", "fig17", "figA21", "figA22"};
}

ExperimentConfig preset(const std::string &name) {
    ExperimentConfig c;
    c.figure = name;
    const auto central = [&](std::size_t l, const std::string &initial,
                             std::size_t n) {
        c.model = "central-spin";
        c.bath_sizes = {l};
        c.initial = initial;
        c.phases = standard_phases();
        c.trotter_n = n;
    };
    const auto ising = [&](const std::string &model, std::size_t n) {
        c.model = model;
        c.alphas = {1.0, 2.0, 5.0};
        c.initial = "ferromagnetic";
        c.phases = {0.0};
        c.trotter_n = n;
    };
    if (name == "fig8") {
        central(2, "2pes", 1);
        c.description = "central-spin L=2, 2PES phi sweep, n_c(tau), N=1";
    } else if (name == "fig9") {
        central(2, "2pes", 2);
        c.postprocess = Postprocess::DeltaN;
        c.description = "central-spin L=2, 2PES phi sweep, delta n_c(tau), N=2";
    } else if (name == "fig10") {
        central(2, "2pes", 3);
        c.postprocess = Postprocess::DeltaN;
        c.description = "central-spin L=2, 2PES phi sweep, delta n_c(tau), N=3";
    } else if (name == "fig11") {
        central(3, "3pes", 1);
        c.description = "central-spin L=3, 3PES chi sweep, n_c(tau), N=1";
    } else if (name == "fig12") {
        central(1, "central-excited", 1);
        c.bath_sizes = {1, 2, 3, 4};
        c.phases = {0.0};
        c.description = "central-spin L=1..4, excited central spin, n_c(tau), "
                        "N=1";
    } else if (name == "fig14") {
        ising("ising:chain8", 1);
        c.description = "Ising 8-spin chain, alpha = J, 2J, 5J, n(t), N=1";
    } else if (name == "fig15") {
        ising("ising:chain8", 2);
        c.postprocess = Postprocess::VMax;
        c.description = "Ising 8-spin chain, alpha = J, 2J, 5J, V(t), N=2";
    } else if (name == "fig17") {
        ising("ising:ladder16", 1);
        c.postprocess = Postprocess::VMax;
        c.description = "Ising 16-spin ladder, alpha = J, 2J, 5J, V(t), N=1";
    } else if (name == "figA21") {
        ising("ising:chain8", 2);
        c.description = "Ising 8-spin chain, alpha = J, 2J, 5J, n(t), N=2";
    } else if (name == "figA22") {
        ising("ising:ladder16", 1);
        c.description = "Ising 16-spin ladder, alpha = J, 2J, 5J, n(t), N=1";
    } else {
        std::string valid;
        for (const auto &n : preset_names()) {
            valid += (valid.empty() ? "" : ", ") + n;
        }
        throw ValidationError("unknown preset '" + name + "' (valid: " + valid +
                              ")");
    }
    return c;
}

ExperimentConfig parse_config(std::istream &in) {
    namespace pt = boost::property_tree;
    pt::ptree root;
    try {
        auto cleaned = detail::strip_inline_comments(in);
        pt::read_ini(cleaned, root);
    } catch (const pt::ini_parser_error &e) {
        throw ValidationError("config: " + std::string(e.what()));
    }

    ExperimentConfig c;
    std::vector<std::pair<std::string, std::string>> entries;
    for (const auto &[key, node] : root) {
        if (key == "noise") {
            std::ostringstream text;
            pt::write_ini(text, node);
            std::istringstream reread(text.str());
            c.inline_noise = parse_noise_model(reread);
            continue;
        }
        if (key == "experiment") {
            for (const auto &[k, v] : node) {
                if (!v.empty()) {
                    throw ValidationError("config: nested section '" + k + "'");
                }
                entries.emplace_back(k, v.data());
            }
            continue;
        }
        if (!node.empty()) {
            throw ValidationError("config: unknown section [" + key + "]");
        }
        entries.emplace_back(key, node.data());
    }

    for (const auto &[key, value] : entries) {
        if (key == "preset") {
            auto noise = c.inline_noise;
            c = preset(trim(value));
            c.inline_noise = noise;
        }
    }
    for (const auto &[key, raw] : entries) {
        const std::string value = trim(raw);
        if (key == "preset") {
            continue;
        } else if (key == "model") {
            c.model = value;
        } else if (key == "spins") {
            c.spins = parse_unsigned(key, value);
        } else if (key == "edges") {
            c.edges.clear();
            for (const auto &item : split_list(value)) {
                const auto dash = item.find('-');
                if (dash == std::string::npos) {
                    throw ValidationError("config key 'edges': '" + item +
                                          "' is not of the form i-j");
                }
                c.edges.emplace_back(parse_unsigned(key, item.substr(0, dash)),
                                     parse_unsigned(key, item.substr(dash + 1)));
            }
        } else if (key == "layout") {
            c.layout = value;
        } else if (key == "L") {
            c.bath_sizes.clear();
            for (const auto &item : split_list(value)) {
                c.bath_sizes.push_back(parse_unsigned(key, item));
            }
        } else if (key == "J") {
            c.coupling = parse_real(key, value);
        } else if (key == "alpha") {
            c.alphas.clear();
            for (const auto &item : split_list(value)) {
                c.alphas.push_back(parse_real(key, item));
            }
        } else if (key == "initial") {
            c.initial = value;
        } else if (key == "phase") {
            c.phases.clear();
            for (const auto &item : split_list(value)) {
                c.phases.push_back(parse_angle(item));
            }
        } else if (key == "backend") {
            c.backend = parse_backend(value);
        } else if (key == "oracle_mode") {
            if (value == "trotter") {
                c.oracle_mode = OracleMode::Trotter;
            } else if (value == "exact") {
                c.oracle_mode = OracleMode::Exact;
            } else {
                throw ValidationError("oracle_mode must be trotter or exact");
            }
        } else if (key == "trotter_n") {
            c.trotter_n = parse_unsigned(key, value);
        } else if (key == "t_start") {
            c.grid.start = parse_real(key, value);
        } else if (key == "t_stop") {
            c.grid.stop = parse_real(key, value);
        } else if (key == "points") {
            c.grid.points = parse_unsigned(key, value);
        } else if (key == "shots") {
            c.shots = parse_unsigned(key, value);
        } else if (key == "seed") {
            c.seed = parse_unsigned(key, value);
        } else if (key == "noise") {
            c.noise = value;
        } else if (key == "postprocess") {
            c.postprocess = parse_postprocess(value);
        } else if (key == "out_dir") {
            c.out_dir = value;
        } else if (key == "figure") {
            c.figure = value;
        } else if (key == "description") {
            c.description = value;
        } else {
            throw ValidationError("config: unknown key '" + key + "'");
        }
    }
    return c;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open config '" + path + "'");
    }
    return parse_config(in);
}

} // namespace spindigit
