#include "tiemb/cli.h"

int main(int argc, char **argv) { return tiemb::cli::Main(argc, argv); }
