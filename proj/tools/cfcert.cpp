// Command-line driver; modes are wired in as the library lands.
#include <cstdio>

int main() {
  std::puts("cfcert: not yet wired");
  return 2;
}
