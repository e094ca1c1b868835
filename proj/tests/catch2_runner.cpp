// Builds the amalgamated Catch2 implementation (and its default main) once.
#include <catch2/catch_amalgamated.cpp>
