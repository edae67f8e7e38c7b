#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#ifndef N
#define N 50
#endif

/* shortest round-trip text, as the compiled program prints reals */
static void put_real(double v, char end)
{
    char buf[40];
    for (int p = 1; p <= 17; ++p) {
        snprintf(buf, sizeof buf, "%.*g", p, v);
        if (strtod(buf, NULL) == v)
            break;
    }
    if (!strpbrk(buf, ".eni"))
        strcat(buf, ".0");
    printf("%s%c", buf, end);
}

static void matgen(double* a, double* b, int n)
{
    int seed = 1325;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            seed = (3125 * seed) % 65536;
            a[i * n + j] = ((double)seed - 32768.0) / 16384.0;
        }
    }
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j)
            s = s + a[i * n + j];
        b[i] = s;
    }
}

static void factor(double* a, int* ipvt, int n)
{
    for (int k = 0; k < n - 1; ++k) {
        int p = k;
        double big = fabs(a[k * n + k]);
        for (int i = k + 1; i < n; ++i) {
            double v = fabs(a[i * n + k]);
            if (v > big) {
                big = v;
                p = i;
            }
        }
        ipvt[k] = p;
        if (p != k) {
            for (int j = 0; j < n; ++j) {
                double t = a[k * n + j];
                a[k * n + j] = a[p * n + j];
                a[p * n + j] = t;
            }
        }
        double piv = a[k * n + k];
        int krow = k * n;
        for (int i = k + 1; i < n; ++i) {
            int row = i * n;
            double f = a[row + k] / piv;
            a[row + k] = f;
            for (int j = k + 1; j < n; ++j)
                a[row + j] = a[row + j] - f * a[krow + j];
        }
    }
    ipvt[n - 1] = n - 1;
}

static void solve(const double* a, const int* ipvt, double* b, double* x, int n)
{
    for (int k = 0; k < n - 1; ++k) {
        int p = ipvt[k];
        if (p != k) {
            double t = b[k];
            b[k] = b[p];
            b[p] = t;
        }
    }
    for (int k = 0; k < n - 1; ++k) {
        for (int i = k + 1; i < n; ++i)
            b[i] = b[i] - a[i * n + k] * b[k];
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j)
            s = s - a[i * n + j] * x[j];
        x[i] = s / a[i * n + i];
    }
}

int main(void)
{
    int n = N;
    double* a = malloc(sizeof(double) * n * n);
    double* b = malloc(sizeof(double) * n);
    double* x = malloc(sizeof(double) * n);
    int* ipvt = malloc(sizeof(int) * n);
    double resid = 0.0, norma = 0.0, normx = 0.0;
    if (!a || !b || !x || !ipvt)
        return 1;
    matgen(a, b, n);
    factor(a, ipvt, n);
    solve(a, ipvt, b, x, n);
    matgen(a, b, n);
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        for (int j = 0; j < n; ++j) {
            s = s - a[i * n + j] * x[j];
            if (fabs(a[i * n + j]) > norma)
                norma = fabs(a[i * n + j]);
        }
        if (fabs(s) > resid)
            resid = fabs(s);
        if (fabs(x[i]) > normx)
            normx = fabs(x[i]);
    }
    printf("%d ", n);
    put_real(resid / ((double)n * norma * normx * 2.220446049250313e-16), '\n');
    double sx = 0.0;
    for (int i = 0; i < n; ++i)
        sx = sx + x[i];
    put_real(x[0], ' ');
    put_real(x[n - 1], ' ');
    put_real(sx, '\n');
    free(a);
    free(b);
    free(x);
    free(ipvt);
    return 0;
}
