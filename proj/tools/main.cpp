#include <cstdio>

// Placeholder entry point; the real subcommand dispatch lands with the CLI
// wiring once the library modules are in place.
int main() {
  std::puts("zfcat: no subcommands wired yet");
  return 1;
}
