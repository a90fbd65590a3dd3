#include <tropfan/cli.hpp>

int main(int argc, char** argv) { return tropfan::run_cli(argc, argv); }
