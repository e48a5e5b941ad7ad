#include "doctest.h"
TEST_SUITE_BEGIN("fool");
TEST_SUITE_END();
