#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "stylomech/log.hpp"

int main(int argc, char** argv) {
  stylomech::log::set_warning_sink({});
  doctest::Context context(argc, argv);
  return context.run();
}
