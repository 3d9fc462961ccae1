#include "commands.hpp"

int main(int argc, char** argv) { return forest::cli::run(argc, argv); }
