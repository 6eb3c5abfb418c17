#include <iostream>
#include <string>
#include <vector>

#include "bsc/cli.hpp"

int main(int argc, char** argv)
{
  return bsc::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
