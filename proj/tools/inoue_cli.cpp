#include "inoue/cli.hpp"

int main(int argc, char** argv) { return inoue::cli_dispatch(argc, argv); }
