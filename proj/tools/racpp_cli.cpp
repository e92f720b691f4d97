#include <iostream>

#include "racpp/cli.hpp"

int main(int argc, char** argv) {
  return racpp::cli_dispatch({argv + 1, argv + argc}, std::cout, std::cerr);
}
