#include "lrens/cli.hpp"

int main(int argc, char** argv) { return lrens::cli_main(argc, argv); }
