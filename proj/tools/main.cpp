#include "CLI11.hpp"
#include "qdyn/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Dissipative two-qubit XYZ dynamics: trajectories, steady states, "
               "parameter sweeps, Liouvillian spectra, oracle validation"};
  app.require_subcommand(1);

  qdyn::cli::RunConfig cfg;
  app.set_config("--config", "", "key=value config file; flags override it");

  app.add_option("--B", cfg.params.B, "uniform field on both qubits");
  app.add_option("--J", cfg.params.J, "XY exchange strength");
  app.add_option("--Delta", cfg.params.Delta, "anisotropy (J*Delta enters the dynamics)");
  app.add_option("--Jz", cfg.params.Jz, "Ising coupling");
  app.add_option("--gamma", cfg.params.gamma, "bath coupling rate (> 0)");
  app.add_option("--n", cfg.params.n, "thermal occupation of the baths (>= 0)");

  app.add_option("--kind", cfg.kind, "initial state family: phi | psi");
  app.add_option("--r", cfg.r, "initial-state purity in [0, 1]");
  app.add_option("--a", cfg.a, "initial amplitude in [0, 1]; |b| = sqrt(1 - a^2)");
  app.add_option("--delta-phase", cfg.delta, "phase of the b amplitude");

  app.add_option("--t-max", cfg.t_max, "trajectory end time (0 = single point t = 0)");
  app.add_option("--steps", cfg.steps, "number of trajectory points (>= 2)");
  app.add_option("--axis", cfg.axes,
                 "sweep axis spec name:lo:hi:count with name in "
                 "{t, B, JDelta, a2, n, r}; give exactly twice for sweep");

  app.add_option("--out", cfg.out, "output path (default: stdout)");
  app.add_option("--format", cfg.format, "output format: csv | json");
  app.add_option("--workers", cfg.workers, "sweep worker threads (0 = hardware)");
  app.add_flag("--include-coherence", cfg.include_coherence,
               "append an l1_coherence column to sweep output");
  app.add_option("--perturb-oracle", cfg.perturb_oracle,
                 "offset added to every analytic reference in validate "
                 "(self-test hook; nonzero must fail)");

  for (const auto& [name, what] :
       {std::pair<const char*, const char*>{"evolve", "time evolution of one configuration"},
        {"sweep", "two-axis concurrence grid"},
        {"steady", "stationary state report"},
        {"spectrum", "Liouvillian eigenvalues"},
        {"validate", "engine-vs-analytic cross checks"}}) {
    app.add_subcommand(name, what)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  return qdyn::cli::run_command(name, cfg);
}
