#include "renorm/cli.hpp"

int main(int argc, char** argv) { return renorm::cli::run(argc, argv); }
