#include "commands.hpp"

int main(int argc, char** argv) { return trimatch::cli::run(argc, argv); }
