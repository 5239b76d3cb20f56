#include "maccfd/cli.hpp"

int main(int argc, char** argv) { return maccfd::cli_main(argc, argv); }
