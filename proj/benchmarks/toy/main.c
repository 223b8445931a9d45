/* Deterministic integer workload for flag tuning runs.
 *
 * Four kernels with different optimization profiles (dense loops, a sieve,
 * data-dependent loads, a hand-rolled sort), all on unsigned integers so no
 * floating-point flag can legally change the output. Prints one checksum. */

#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>

#define MAT_N 220
#define MAT_REPS 12
#define SIEVE_N 1500000
#define WALK_LOG 20
#define WALK_PASSES 5
#define SORT_N 220000

static uint64_t mix(uint64_t h, uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ULL;
    return h;
}

static uint64_t xs64(uint64_t *s) {
    uint64_t x = *s;
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    return *s = x;
}

static uint64_t kernel_matmul(void) {
    static uint32_t a[MAT_N][MAT_N], b[MAT_N][MAT_N], c[MAT_N][MAT_N];
    uint64_t seed = 0x2545F4914F6CDD1DULL;
    for (int i = 0; i < MAT_N; i++)
        for (int j = 0; j < MAT_N; j++) {
            a[i][j] = (uint32_t)xs64(&seed);
            b[i][j] = (uint32_t)xs64(&seed);
            c[i][j] = 0;
        }
    for (int rep = 0; rep < MAT_REPS; rep++)
        for (int i = 0; i < MAT_N; i++)
            for (int k = 0; k < MAT_N; k++) {
                uint32_t aik = a[i][k];
                for (int j = 0; j < MAT_N; j++)
                    c[i][j] += aik * b[k][j];
            }
    uint64_t h = 0xcbf29ce484222325ULL;
    for (int i = 0; i < MAT_N; i++)
        for (int j = 0; j < MAT_N; j++) h = mix(h, c[i][j]);
    return h;
}

static uint64_t kernel_sieve(void) {
    static uint8_t composite[SIEVE_N + 1];
    for (int i = 0; i <= SIEVE_N; i++) composite[i] = 0;
    uint64_t count = 0, last = 0;
    for (int p = 2; p <= SIEVE_N; p++) {
        if (composite[p]) continue;
        count++;
        last = (uint64_t)p;
        for (int m = p + p; m <= SIEVE_N; m += p) composite[m] = 1;
    }
    return mix(mix(0xcbf29ce484222325ULL, count), last);
}

static uint64_t kernel_walk(void) {
    enum { N = 1 << WALK_LOG, MASK = (1 << WALK_LOG) - 1 };
    static uint32_t arr[1 << WALK_LOG];
    uint64_t seed = 0x9E3779B97F4A7C15ULL;
    for (int i = 0; i < N; i++) arr[i] = (uint32_t)xs64(&seed);
    uint64_t acc = 0xcbf29ce484222325ULL;
    for (int pass = 0; pass < WALK_PASSES; pass++)
        for (int i = 0; i < N; i++)
            acc = mix(acc, arr[(acc ^ (uint64_t)i) & MASK]);
    return acc;
}

static uint64_t kernel_sort(void) {
    static uint32_t arr[SORT_N];
    uint64_t seed = 0xD1B54A32D192ED03ULL;
    for (int i = 0; i < SORT_N; i++) arr[i] = (uint32_t)xs64(&seed);
    /* Shell sort, Ciura-ish gap sequence. */
    static const int gaps[] = {57749, 21577, 8929, 3905, 2161, 929,
                               505,   209,   109,  41,   19,   5,
                               1};
    for (unsigned g = 0; g < sizeof gaps / sizeof gaps[0]; g++) {
        const int gap = gaps[g];
        for (int i = gap; i < SORT_N; i++) {
            uint32_t v = arr[i];
            int j = i;
            while (j >= gap && arr[j - gap] > v) {
                arr[j] = arr[j - gap];
                j -= gap;
            }
            arr[j] = v;
        }
    }
    uint64_t h = 0xcbf29ce484222325ULL;
    for (int i = 0; i < SORT_N; i += 7) h = mix(h, arr[i]);
    return mix(h, arr[SORT_N - 1]);
}

int main(void) {
    uint64_t h = 0xcbf29ce484222325ULL;
    h = mix(h, kernel_matmul());
    h = mix(h, kernel_sieve());
    h = mix(h, kernel_walk());
    h = mix(h, kernel_sort());
    printf("%016llx\n", (unsigned long long)h);
    return 0;
}
