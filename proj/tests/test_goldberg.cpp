#include "doctest.h"
TEST_SUITE_BEGIN("goldberg");
TEST_SUITE_END();
