// Command-line driver over the C interface.
#include <cstdio>
#include <cstring>

#include "runup/runup.h"

namespace {

const char* const kUsage =
    "usage: runup <mode> [--config FILE] [--bay-m F] [--proj-order N] [--nk N] [--kmax F]\n"
    "                    [--fit-terms N] [--in FILE] [--out DIR] [--key value ...]\n"
    "\n"
    "modes:\n"
    "  forward         initial condition -> run-up R(t)\n"
    "  inverse         run-up R(t) -> initial displacement and velocity\n"
    "  roundtrip       forward then inverse, with error diagnostics\n"
    "  fit             Gaussian-sum fit of R(t)\n"
    "  check-breaking  report whether the data describe a breaking wave\n"
    "\n"
    "Without --in, forward-type modes use --case gaussian|soliton|nwave with\n"
    "--amplitude A (default 5e-5). See README.md for every key.\n"
    "\n"
    "exit codes: 0 success, 2 configuration or input error, 3 breaking wave,\n"
    "            4 numerical failure\n";

int report(runup_status status) {
  std::fprintf(stderr, "runup: error: %s\n", runup_last_error());
  return runup_exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--help") == 0 || std::strcmp(argv[i], "-h") == 0) {
      std::fputs(kUsage, stdout);
      return 0;
    }
    if (std::strcmp(argv[i], "--version") == 0) {
      std::printf("runup %s\n", runup_version());
      return 0;
    }
  }
  if (argc < 2) {
    std::fputs(kUsage, stderr);
    return 2;
  }

  runup_config* config = nullptr;
  runup_status status = runup_config_create(&config);
  if (status != RUNUP_OK) return report(status);
  status = runup_config_parse(config, argc - 1, argv + 1);
  if (status != RUNUP_OK) {
    const int code = report(status);
    std::fputs("run 'runup --help' for usage\n", stderr);
    runup_config_destroy(config);
    return code;
  }

  runup_outputs* outputs = nullptr;
  status = runup_execute(config, &outputs);
  if (status != RUNUP_OK) {
    const int code = report(status);
    runup_config_destroy(config);
    return code;
  }

  size_t files = 0;
  status = runup_outputs_write(outputs, nullptr, &files);
  if (status != RUNUP_OK) {
    const int code = report(status);
    runup_outputs_destroy(outputs);
    runup_config_destroy(config);
    return code;
  }

  std::printf("mode %s: wrote %zu files to %s\n", runup_config_mode(config), files,
              runup_config_output_dir(config));
  for (size_t i = 0; i < runup_outputs_diagnostic_count(outputs); ++i) {
    const char* name = nullptr;
    double value = 0.0;
    if (runup_outputs_diagnostic(outputs, i, &name, &value) == RUNUP_OK) {
      std::printf("  %-28s %.6g\n", name, value);
    }
  }
  const int breaking = runup_outputs_breaking(outputs);
  if (breaking) std::printf("breaking wave detected\n");
  runup_outputs_destroy(outputs);
  runup_config_destroy(config);
  return breaking ? 3 : 0;
}
