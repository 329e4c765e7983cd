#include "gcurv/cli.hpp"

int main(int argc, char** argv) { return gcurv::run_cli(argc, argv); }
