#include "doctest.h"
TEST_SUITE_BEGIN("twoquery");
TEST_SUITE_END();
