#include "averify/cli.hpp"

int main(int argc, char** argv) { return averify::cli_main(argc, argv); }
