#include "spinstar/cli.hpp"

int main(int argc, char** argv) { return spinstar::run_cli(argc, argv); }
