#include "zofw/experiment.hpp"

int main(int argc, char** argv) { return zofw::run_cli(argc, argv); }
