#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "vslb/pipelines.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"Slab-averaged vorticity scheme and reference Navier-Stokes solver on the periodic box"};
  std::string command;
  std::vector<std::string> configs;
  int jobs = 1;
  std::optional<std::string> out_dir;
  app.add_option("command", command, "reference | slab | audit | converge")
      ->required()
      ->check(CLI::IsMember({"reference", "slab", "audit", "converge"}));
  app.add_option("config", configs, "run configuration file(s)")->required()->check(CLI::ExistingFile);
  app.add_option("--jobs", jobs, "configs run concurrently")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "output directory (one subdirectory per config when several are given)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : vslb::kExitConfig;
  }

  auto output_for = [&](const std::string& config) -> std::optional<fs::path> {
    if (!out_dir) return std::nullopt;
    if (configs.size() == 1) return fs::path(*out_dir);
    return fs::path(*out_dir) / fs::path(config).stem();
  };

  if (configs.size() == 1) return vslb::run_command(command, configs.front(), output_for(configs.front()), std::cerr);

  std::atomic<std::size_t> next{0};
  std::atomic<int> worst{0};
  std::mutex err_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < configs.size(); k = next++) {
      std::ostringstream err;
      const int status = vslb::run_command(command, configs[k], output_for(configs[k]), err);
      {
        std::lock_guard lock(err_mutex);
        std::cerr << configs[k] << ": " << err.str();
      }
      int seen = worst.load();
      while (status > seen && !worst.compare_exchange_weak(seen, status)) {
      }
    }
  };
  std::vector<std::jthread> pool;
  const int count = std::min<int>(jobs, static_cast<int>(configs.size()));
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  pool.clear();
  return worst.load();
}
