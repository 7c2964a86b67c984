#include "kp2stab/config.hpp"

int main(int argc, char** argv) { return kp2stab::run_cli(argc, argv); }
