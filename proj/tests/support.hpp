#pragma once

#include <doctest.h>

#include "stylomech/error.hpp"

/// Checks that `expr` throws stylomech::Error with the given code.
#define CHECK_ERRC(expr, errc)                                        \
  do {                                                                \
    bool thrown_ = false;                                             \
    try {                                                             \
      (void)(expr);                                                   \
    } catch (const stylomech::Error& e) {                             \
      thrown_ = true;                                                 \
      CHECK_MESSAGE(e.code() == (errc), "got " << e.what());          \
    }                                                                 \
    CHECK_MESSAGE(thrown_, "expected an error from " #expr);          \
  } while (false)
