// Command line entry point, linked as a library so tests can drive the CLI
// in-process. Returns the process exit code; never throws.
#pragma once

namespace averify {

int cli_main(int argc, const char* const* argv);

}  // namespace averify
