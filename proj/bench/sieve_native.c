#include <stdio.h>

#ifndef ITERS
#define ITERS 10
#endif
#ifndef SIZE
#define SIZE 8190
#endif

static char flags[SIZE + 1];

int main(void)
{
    int count = 0;
    for (int it = 0; it < ITERS; ++it) {
        count = 0;
        for (int i = 0; i < SIZE; ++i)
            flags[i] = 1;
        for (int i = 0; i < SIZE; ++i) {
            if (flags[i]) {
                int prime = i + i + 3;
                for (int k = i + prime; k <= SIZE; k += prime)
                    flags[k] = 0;
                ++count;
            }
        }
    }
    printf("%d\n", count);
    return 0;
}
