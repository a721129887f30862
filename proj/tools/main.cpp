#include "cli.hpp"

int main(int argc, char** argv) { return s3sr::cli::run(argc, argv); }
