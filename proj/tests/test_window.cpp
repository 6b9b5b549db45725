#include "doctest.h"

#include <cstdlib>
#include <vector>

#include "veerlat/window.hpp"

using namespace veerlat;

namespace {
struct EnvGuard {
  EnvGuard(const char* value) {
    if (value)
      setenv("VEERLAT_WINDOW", value, 1);
    else
      unsetenv("VEERLAT_WINDOW");
  }
  ~EnvGuard() { unsetenv("VEERLAT_WINDOW"); }
};
} // namespace

TEST_SUITE("window") {

TEST_CASE("cap parsing") {
  {
    EnvGuard g(nullptr);
    CHECK(windowCap() == 48);
  }
  {
    EnvGuard g("7");
    CHECK(windowCap() == 7);
  }
  {
    EnvGuard g("200");
    CHECK(windowCap() == 200);
  }
  {
    EnvGuard g("2"); // below the minimum: ignored
    CHECK(windowCap() == 48);
  }
  {
    EnvGuard g("nonsense");
    CHECK(windowCap() == 48);
  }
}

TEST_CASE("adaptive retry doubles to the cap") {
  EnvGuard g(nullptr);
  std::vector<int> tried;
  int got = withWindow([&](int w) {
    tried.push_back(w);
    if (w < 12) windowOverrun("test probe");
    return w;
  });
  CHECK(got == 12);
  CHECK(tried == std::vector<int>{3, 6, 12});
}

TEST_CASE("cap exhaustion rethrows") {
  EnvGuard g("8");
  std::vector<int> tried;
  CHECK_THROWS_AS(withWindow([&](int w) -> int {
                    tried.push_back(w);
                    windowOverrun("always too small");
                  }),
                  Error);
  CHECK(tried == std::vector<int>{3, 6, 8});
}

TEST_CASE("other errors pass straight through") {
  EnvGuard g(nullptr);
  int calls = 0;
  CHECK_THROWS_WITH_AS(withWindow([&](int) -> int {
                         ++calls;
                         fail(ErrorCode::Internal, "unrelated failure");
                       }),
                       "unrelated failure", Error);
  CHECK(calls == 1);
}

} // TEST_SUITE
