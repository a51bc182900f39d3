// placeholder; full acceptance suite lands after the engine benchmark
#include <cstdio>
int main() {
    std::puts("acceptance suite not implemented yet");
    return 1;
}
