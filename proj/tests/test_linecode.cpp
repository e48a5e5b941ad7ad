#include "doctest.h"
TEST_SUITE_BEGIN("linecode");
TEST_SUITE_END();
