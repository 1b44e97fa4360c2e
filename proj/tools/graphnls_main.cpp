#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "graphnls/experiments.hpp"

namespace {

void print_usage() {
    std::printf(
        "usage: graphnls <spectrum|reduced|instability|compare|sweep> [options]\n"
        "\n"
        "options:\n"
        "  --config PATH        flat key = value config file ('#' comments)\n"
        "  --out DIR            output directory (overrides the config's out key)\n"
        "  --override key=value set one config key (repeatable)\n"
        "\n"
        "environment:\n"
        "  GRAPHNLS_THREADS     caps sweep worker count\n"
        "  GRAPHNLS_SIMD        kernel lane: auto | scalar | avx2\n");
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        print_usage();
        return 64;
    }
    const std::string cmd = argv[1];
    if (cmd == "--help" || cmd == "-h" || cmd == "help") {
        print_usage();
        return 0;
    }

    graphnls::ExperimentConfig cfg;
    try {
        std::vector<std::string> overrides;
        std::string out_override;
        for (int i = 2; i < argc; ++i) {
            if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) {
                cfg = graphnls::ExperimentConfig::from_file(argv[++i]);
            } else if (std::strcmp(argv[i], "--out") == 0 && i + 1 < argc) {
                out_override = argv[++i];
            } else if (std::strcmp(argv[i], "--override") == 0 && i + 1 < argc) {
                overrides.emplace_back(argv[++i]);
            } else {
                std::fprintf(stderr, "graphnls: unknown argument '%s'\n", argv[i]);
                print_usage();
                return 64;
            }
        }
        for (const auto& kv : overrides) cfg.apply_override(kv);
        if (!out_override.empty()) cfg.out = out_override;

        if (cmd == "spectrum") return graphnls::cmd_spectrum(cfg);
        if (cmd == "reduced") return graphnls::cmd_reduced(cfg);
        if (cmd == "instability") return graphnls::cmd_instability(cfg);
        if (cmd == "compare") return graphnls::cmd_compare(cfg);
        if (cmd == "sweep") return graphnls::cmd_sweep(cfg);
        std::fprintf(stderr, "graphnls: unknown subcommand '%s'\n", cmd.c_str());
        print_usage();
        return 64;
    } catch (const graphnls::Error& e) {
        std::fprintf(stderr, "graphnls: error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "graphnls: unexpected error: %s\n", e.what());
        return 1;
    }
}
