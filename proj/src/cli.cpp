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

#include "spindigit/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spindigit/analysis.hpp"
#include "spindigit/error.hpp"
#include "spindigit/models.hpp"
#include "spindigit/qasm.hpp"

namespace spindigit::cli {

namespace fs = std::filesystem;

namespace {

std::string stem(const std::string &file_name) {
    return file_name.substr(0, file_name.rfind(".csv"));
}

std::string stamp(double t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", t);
    return buf;
}

std::string preset_list() {
    std::string s;
    for (const auto &n : preset_names()) {
        s += (s.empty() ? "" : ", ") + n;
    }
    return s;
}

std::string plot_stub(const std::vector<fs::path> &csvs,
                      const std::string &title) {
    std::ostringstream py;
    py << "# Generated by spindigit. Requires matplotlib.\n"
       << "import csv\n"
       << "import matplotlib.pyplot as plt\n\n"
       << "FILES = [\n";
    for (const auto &p : csvs) {
        py << "    \"" << p.filename().string() << "\",\n";
    }
    py << "]\n\n"
       << "for name in FILES:\n"
       << "    with open(name) as f:\n"
       << "        rows = list(csv.DictReader(f))\n"
       << "    plt.plot([float(r['tau']) for r in rows],\n"
       << "             [float(r['value']) for r in rows], label=name[:-4])\n"
       << "plt.xlabel('tau')\n"
       << "plt.title(\"" << title << "\")\n"
       << "plt.legend(fontsize='small')\n"
       << "plt.savefig('plot.png', dpi=150)\n";
    return py.str();
}

} // namespace

void write_atomically(const fs::path &path, const std::string &content) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write " + tmp.string());
        }
        out << content;
        if (!out.flush()) {
            throw Error("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

std::vector<fs::path> cmd_run(const ExperimentConfig &config,
                              const RunOptions &options, std::ostream &log) {
    const auto start = std::chrono::steady_clock::now();
    const auto curves = config.curves();
    const fs::path dir(config.out_dir);
    std::vector<fs::path> written;
    std::vector<fs::path> plotted;

    for (const auto &spec : curves) {
        const auto series = assemble_series(spec);
        const auto name = series_file_name(spec);
        written.push_back(dir / name);
        write_atomically(written.back(), to_csv(series));
        plotted.push_back(written.back());
        log << "wrote " << written.back().string() << '\n';

        if (config.postprocess != Postprocess::None) {
            try {
                TimeSeries derived;
                switch (config.postprocess) {
                case Postprocess::DeltaN:
                    derived = delta_n(series);
                    break;
                case Postprocess::VMax:
                    derived = normalized_v(series, Normalizer::Max);
                    break;
                case Postprocess::VMean:
                    derived = normalized_v(series, Normalizer::Mean);
                    break;
                case Postprocess::None:
                    break;
                }
                written.push_back(dir / (stem(name) + "_" +
                                         postprocess_name(config.postprocess) +
                                         ".csv"));
                write_atomically(written.back(), to_csv(derived));
                plotted.back() = written.back();
                log << "wrote " << written.back().string() << '\n';
            } catch (const DegenerateSeriesError &e) {
                log << "skipped " << postprocess_name(config.postprocess)
                    << " for " << name << ": " << e.what() << '\n';
            }
        }

        if (options.export_qasm) {
            for (double t : spec.grid.values()) {
                const auto exp =
                    full_experiment(spec.initial, spec.model, t, spec.trotter_n);
                written.push_back(dir / "qasm" /
                                  (stem(name) + "_tau" + stamp(t) + ".qasm"));
                write_atomically(written.back(), export_openqasm(exp.circuit));
            }
        }
    }

    if (options.plot_script) {
        written.push_back(dir / "plot.py");
        write_atomically(written.back(),
                         plot_stub(plotted, config.figure.empty()
                                                ? config.description
                                                : config.figure));
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    nlohmann::ordered_json m;
    m["toolkit"] = "spindigit";
    m["version"] = SPINDIGIT_VERSION;
    m["figure"] = config.figure;
    m["description"] = config.description;
    m["config_hash"] = "fnv1a64:" + fnv1a_hex(config.canonical_text());
    m["backend"] = backend_name(config.backend);
    if (config.backend == Backend::Noisy) {
        m["label"] = "qualitative";
        m["noise"] = config.inline_noise ? std::string("inline") : config.noise;
    }
    m["trotter_n"] = config.trotter_n;
    m["shots"] = config.backend == Backend::Oracle ? 0 : config.shots;
    m["seed"] = config.seed;
    m["grid"] = {{"start", config.grid.start},
                 {"stop", config.grid.stop},
                 {"points", config.grid.points}};
    m["postprocess"] = postprocess_name(config.postprocess);
    m["wall_time_s"] = wall;
    auto files = nlohmann::ordered_json::array();
    for (const auto &p : written) {
        files.push_back(fs::relative(p, dir).generic_string());
    }
    m["files"] = files;
    m["config"] = config.canonical_text();
    write_atomically(dir / "manifest.json", m.dump(2) + "\n");
    written.push_back(dir / "manifest.json");
    return written;
}

std::vector<fs::path> cmd_export(const ExperimentConfig &config,
                                 std::optional<double> time) {
    std::vector<fs::path> written;
    const fs::path dir(config.out_dir);
    for (const auto &spec : config.curves()) {
        const auto base = stem(series_file_name(spec));
        const auto times =
            time ? std::vector<double>{*time} : spec.grid.values();
        for (double t : times) {
            const auto exp =
                full_experiment(spec.initial, spec.model, t, spec.trotter_n);
            written.push_back(dir / (base + "_tau" + stamp(t) + ".qasm"));
            write_atomically(written.back(), export_openqasm(exp.circuit));
        }
    }
    return written;
}

int cmd_verify(const VerifyOptions &options, std::ostream &out) {
    bool all = true;
    for (int id = 1; id <= kCriterionCount; ++id) {
        if (!options.only.empty() &&
            std::find(options.only.begin(), options.only.end(), id) ==
                options.only.end()) {
            continue;
        }
        const auto r = run_criterion(id, options);
        out << to_json_line(r) << std::endl;
        all = all && r.passed;
    }
    return all ? kExitOk : kExitValidation;
}

int main(int argc, const char *const *argv, std::ostream &out,
         std::ostream &err) {
    CLI::App app{"Digital quantum simulation of spin models on small gate-based "
                 "devices"};
    app.set_version_flag("--version", std::string(SPINDIGIT_VERSION));
    app.require_subcommand(1);

    struct Common {
        std::string preset;
        std::string config;
        std::string backend;
        std::optional<std::size_t> trotter_n;
        std::optional<std::uint64_t> shots;
        std::optional<std::uint64_t> seed;
        std::optional<std::size_t> points;
        std::string out_dir;
        std::string noise;
        std::optional<unsigned> threads;
    };
    Common run_args;
    Common export_args;
    const auto add_common = [](CLI::App *cmd, Common &c) {
        cmd->add_option("--preset", c.preset, "Figure preset (" + preset_list() + ")");
        cmd->add_option("--config", c.config, "INI experiment config");
        cmd->add_option("--backend", c.backend, "oracle, ideal or noisy");
        cmd->add_option("--trotter-n", c.trotter_n, "Trotter number N");
        cmd->add_option("--shots", c.shots, "Shots per time point");
        cmd->add_option("--seed", c.seed, "Base seed");
        cmd->add_option("--points", c.points, "Time-grid points");
        cmd->add_option("--out-dir", c.out_dir, "Output directory");
        cmd->add_option("--noise", c.noise, "Noise preset name or INI file");
        cmd->add_option("--threads", c.threads, "Worker threads (0 = all)");
    };

    auto *run = app.add_subcommand("run", "Run an experiment and write CSVs");
    add_common(run, run_args);
    RunOptions run_options;
    run->add_flag("--export-qasm", run_options.export_qasm,
                  "Also write the circuit of every point as OpenQASM");
    run->add_flag("--plot-script", run_options.plot_script,
                  "Write a matplotlib script next to the CSVs");

    auto *exp = app.add_subcommand("export", "Write circuits as OpenQASM 2.0");
    add_common(exp, export_args);
    std::optional<double> export_time;
    exp->add_option("--time", export_time, "Single time point to export");

    auto *ver = app.add_subcommand("verify", "Run the acceptance checks");
    VerifyOptions verify_options;
    std::string golden;
    bool inject_bug = false;
    ver->add_option("--golden-dir", golden, "Reference CSV directory");
    ver->add_option("--criterion", verify_options.only, "Run only these ids");
    ver->add_option("--seed", verify_options.seed, "Seed for random cases");
    ver->add_flag("--inject-zz-bug", inject_bug,
                  "Flip zz CNOT operands to exercise the equivalence check");

    app.add_subcommand("presets", "List figure presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitValidation;
    }

    const auto build = [&](const Common &c) {
        if (c.preset.empty() && c.config.empty()) {
            throw ValidationError("need --preset or --config (presets: " +
                                  preset_list() + ")");
        }
        ExperimentConfig config =
            c.config.empty() ? preset(c.preset) : load_config(c.config);
        if (!c.config.empty() && !c.preset.empty()) {
            throw ValidationError("--preset and --config are exclusive");
        }
        if (!c.backend.empty()) {
            config.backend = parse_backend(c.backend);
        }
        if (c.trotter_n) {
            config.trotter_n = *c.trotter_n;
        }
        if (c.shots) {
            config.shots = *c.shots;
        }
        if (c.seed) {
            config.seed = *c.seed;
        }
        if (c.points) {
            config.grid.points = *c.points;
        }
        if (!c.out_dir.empty()) {
            config.out_dir = c.out_dir;
        }
        if (!c.noise.empty()) {
            config.noise = c.noise;
            config.inline_noise.reset();
        }
        if (c.threads) {
            config.threads = *c.threads;
        }
        return config;
    };

    try {
        if (run->parsed()) {
            const auto files = cmd_run(build(run_args), run_options, err);
            out << files.size() << " files written\n";
            return kExitOk;
        }
        if (exp->parsed()) {
            const auto files = cmd_export(build(export_args), export_time);
            for (const auto &f : files) {
                out << f.string() << '\n';
            }
            return kExitOk;
        }
        if (ver->parsed()) {
            if (!golden.empty()) {
                verify_options.golden_dir = golden;
            }
            if (inject_bug) {
                verify_options.mutate = flip_zz_cnots;
            }
            return cmd_verify(verify_options, out);
        }
        for (const auto &n : preset_names()) {
            const auto p = preset(n);
            out << n << ": " << p.description << '\n';
        }
        return kExitOk;
    } catch (const CapacityError &e) {
        err << "capacity error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const fs::filesystem_error &e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}

} // namespace spindigit::cli
