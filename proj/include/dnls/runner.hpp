#pragma once

#include <cstdint>

#include "dnls/evolve.hpp"
#include "dnls/params.hpp"

namespace dnls {

enum class Command {
    soliton, classify, spectrum, profile, evolve, escape, multi_escape,
    interaction
};

struct RunConfig {
    Command command = Command::soliton;
    SolitonParams params;
    std::vector<SolitonParams> multi;  // multi-escape / interaction
    double L = 0;                      // 0: suggested_box(h)
    int N = 2048;
    EvolutionConfig evo;
    double t_end = 0;
    int N0 = 2;                        // profile command
    double a = 1e-2;                   // perturbation amplitude
    int n_amplitudes = 7;              // escape sweep a_n = 2^-n a
    double epsilon = 0;                // escape exit radius, 0: 1e-2 ||phi||
    double v_threshold = 0;            // multi separation-speed gate
    std::string outdir;
    std::uint64_t seed = 0;
    std::string config_path;
};

// argv -> RunConfig; CLI11 underneath, flags override config file entries,
// unknown keys rejected. Throws std::invalid_argument with the parser
// message on bad input (exit code 2 in the binary).
RunConfig parse_config(int argc, const char* const* argv);

// Dispatch; writes results + manifest.json under the output root. Returns
// the process exit code: 0 ok, 2 config, 3 blow-up, 4 resonance.
int run(const RunConfig& cfg);

int dnlslab_main(int argc, const char* const* argv);

}  // namespace dnls
