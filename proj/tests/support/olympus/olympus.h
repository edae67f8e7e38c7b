/*
 * Olympus abstract machine: mnemonics used by generated translation units.
 *
 * Frames are arrays of cells in a static stack. A cell holds an int, a real
 * or a handle; handles are stable entries in a table kept at the top of the
 * heap, so compaction moves objects without invalidating values held in C
 * temporaries. Foreign slots are reached through the display in O(1).
 */
#ifndef OLYMPUS_H
#define OLYMPUS_H

#include <stddef.h>
#include <stdint.h>
#include <string.h>

#ifndef OLYMPUS_INT64
#define OLYMPUS_INT64 0
#endif
#ifndef OLYMPUS_REAL32
#define OLYMPUS_REAL32 0
#endif
#ifndef OLYMPUS_BOUNDS
#define OLYMPUS_BOUNDS 1
#endif
#ifndef OLYMPUS_HEAP_BYTES
#define OLYMPUS_HEAP_BYTES 8388608
#endif
#ifndef OLYMPUS_STACK_CELLS
#define OLYMPUS_STACK_CELLS ((OLYMPUS_HEAP_BYTES) / 64 < 512 ? 512 : (OLYMPUS_HEAP_BYTES) / 64)
#endif
#ifndef OLYMPUS_TEMP_SLOTS
#define OLYMPUS_TEMP_SLOTS ((OLYMPUS_HEAP_BYTES) / 256 < 256 ? 256 : (OLYMPUS_HEAP_BYTES) / 256)
#endif

#define OLY_MAX_DEPTH 64

#if OLYMPUS_INT64
typedef int64_t oly_int;
#else
typedef int32_t oly_int;
#endif
#if OLYMPUS_REAL32
typedef float oly_real;
#else
typedef double oly_real;
#endif

typedef struct oly_obj oly_obj;
typedef oly_obj** oly_handle;

typedef union oly_cell {
    oly_int i;
    oly_real r;
    oly_handle h;
    const char* m;
    size_t n;
} oly_cell;

typedef void (*oly_fn)(const oly_cell* args, oly_cell* ret);

struct oly_obj {
    oly_obj** back;  /* the handle-table entry that points here */
    uint32_t len;
    uint8_t kind;
    uint8_t mark;
};

enum { OLY_VEC_I = 1, OLY_VEC_R, OLY_VEC_H, OLY_STR, OLY_CPLX, OLY_CLOSURE };

#define OLY_HDR ((sizeof(oly_obj) + 7) & ~(size_t)7)
#define OLY_DATA(o) ((void*)((char*)(o) + OLY_HDR))

typedef struct {
    oly_real re, im;
} oly_complex;

typedef struct {
    oly_fn fn;
    oly_cell* env[1];
} oly_closure;

enum {
    OLY_TRAP_DIV_BY_ZERO = 3,
    OLY_TRAP_INDEX = 4,
    OLY_TRAP_HEAP = 5,
    OLY_TRAP_VALUE = 6,
};

/* Storage, defined in the generated unit by HEAP(). */
extern unsigned char oly_heap[];
extern const size_t oly_heap_bytes;
extern oly_cell oly_stack[];
extern const size_t oly_stack_cells;
extern oly_handle oly_temps[];
extern const size_t oly_temp_cap;

extern oly_cell* oly_display[OLY_MAX_DEPTH];
extern size_t oly_tsp;

void olympus_main(void);

void oly_init(void);
void oly_finish(void);
void oly_trap(int code, const char* fmt, ...) __attribute__((noreturn, format(printf, 2, 3)));

/* heap */
oly_handle oly_alloc(int kind, size_t len);
size_t oly_gc(void);
size_t oly_obj_bytes(const oly_obj* o);
typedef struct {
    size_t live_objects, live_bytes, used_bytes, free_bytes, handles, collections;
} oly_heap_stats;
oly_heap_stats oly_stats(void);

/* frames */
oly_cell* oly_frame_push(size_t size, const char* map);
void oly_frame_pop(oly_cell* fp);

static inline oly_handle oly_troot(oly_handle h)
{
    if (oly_tsp >= oly_temp_cap)
        oly_trap(OLY_TRAP_HEAP, "temporary root stack exhausted");
    oly_temps[oly_tsp++] = h;
    return h;
}

/* values */
oly_handle oly_vec(int kind, size_t esize, size_t n, const void* src);
oly_handle oly_vcat(oly_handle a, oly_handle b, int kind, size_t esize);
oly_handle oly_vrep(oly_handle a, oly_int n, int kind, size_t esize);
oly_handle oly_lits(const char* s, size_t n);
oly_handle oly_adds(oly_handle a, oly_handle b);
oly_handle oly_muls(oly_handle a, oly_int n);
int oly_cmps(oly_handle a, oly_handle b);
oly_handle oly_charat(oly_handle s, oly_int i);
oly_handle oly_cplx(oly_real re, oly_real im);
oly_handle oly_cadd(oly_handle a, oly_handle b);
oly_handle oly_csub(oly_handle a, oly_handle b);
oly_handle oly_cmul(oly_handle a, oly_handle b);
oly_handle oly_cdiv(oly_handle a, oly_handle b);
oly_handle oly_cneg(oly_handle a);
oly_handle oly_cpos(oly_handle a);
int oly_ceq(oly_handle a, oly_handle b);
oly_handle oly_mklambda(oly_fn fn, int depth);
oly_cell oly_apply(oly_handle f, int n, const oly_cell* args);

oly_int oly_modi(oly_int a, oly_int b);
oly_int oly_powi(oly_int a, oly_int b);
oly_real oly_divr(oly_real a, oly_real b);
oly_real oly_modr(oly_real a, oly_real b);
oly_real oly_powr(oly_real a, oly_real b);
oly_int oly_r2i(oly_real x);
oly_int oly_s2i(oly_handle s);
oly_real oly_s2r(oly_handle s);

/* text */
enum { OLY_T_I, OLY_T_B, OLY_T_R, OLY_T_S, OLY_T_C, OLY_T_N, OLY_T_VI, OLY_T_VB, OLY_T_VR, OLY_T_VS, OLY_T_VC };
void oly_put_int(oly_int v, int as_bool);
void oly_put_real(oly_real v);
void oly_put_handle(oly_handle h, int t);
void oly_put_sp(void);
void oly_put_nl(void);
oly_handle oly_str_int(oly_int v, int as_bool);
oly_handle oly_str_real(oly_real v);
oly_handle oly_str_handle(oly_handle h, int t);

void oly_index_trap(int64_t i, size_t len) __attribute__((noreturn));

static inline oly_int oly_chk(oly_handle h, oly_int i)
{
#if OLYMPUS_BOUNDS
    if ((uint64_t)(int64_t)i >= (uint64_t)(*h)->len)
        oly_index_trap((int64_t)i, (*h)->len);
#else
    (void)h;
#endif
    return i;
}

/*
 * Vector elements are wrapped in single-member structs so the optimizer can
 * tell an element store from a frame-cell store and keep loop state in
 * registers.
 */
typedef struct { oly_int v; } oly_ielem;
typedef struct { oly_real v; } oly_relem;
typedef struct { oly_handle v; } oly_helem;

#define OLY_VI(h) ((oly_ielem*)OLY_DATA(*(h)))
#define OLY_VR(h) ((oly_relem*)OLY_DATA(*(h)))
#define OLY_VH(h) ((oly_helem*)OLY_DATA(*(h)))
#define OLY_CX(h) ((oly_complex*)OLY_DATA(*(h)))

static inline oly_int oly_ldai(oly_handle h, oly_int i) { return OLY_VI(h)[oly_chk(h, i)].v; }
static inline oly_real oly_ldar(oly_handle h, oly_int i) { return OLY_VR(h)[oly_chk(h, i)].v; }
static inline oly_handle oly_ldah(oly_handle h, oly_int i) { return oly_troot(OLY_VH(h)[oly_chk(h, i)].v); }
static inline void oly_stai(oly_handle h, oly_int i, oly_int v) { OLY_VI(h)[oly_chk(h, i)].v = v; }
static inline void oly_star(oly_handle h, oly_int i, oly_real v) { OLY_VR(h)[oly_chk(h, i)].v = v; }
static inline void oly_stah(oly_handle h, oly_int i, oly_handle v) { OLY_VH(h)[oly_chk(h, i)].v = v; }
static inline oly_real oly_cre(oly_handle h) { return OLY_CX(h)->re; }
static inline oly_real oly_cim(oly_handle h) { return OLY_CX(h)->im; }
static inline oly_int oly_len(oly_handle h) { return (oly_int)(*h)->len; }

#define OLY_CAT2(a, b) a##b
#define OLY_CAT(a, b) OLY_CAT2(a, b)

/* ---- program structure ---- */

#define HEAP(bytes)                                                   \
    unsigned char oly_heap[(bytes)] __attribute__((aligned(16)));     \
    const size_t oly_heap_bytes = (bytes);                            \
    oly_cell oly_stack[OLYMPUS_STACK_CELLS];                          \
    const size_t oly_stack_cells = OLYMPUS_STACK_CELLS;               \
    oly_handle oly_temps[OLYMPUS_TEMP_SLOTS];                         \
    const size_t oly_temp_cap = OLYMPUS_TEMP_SLOTS

#define FUNDECL(name) static void name(const oly_cell* oly_args_, oly_cell* oly_ret_)

#define FUNC(name, depth, size, nparams, map, rh)                            \
    static void name(const oly_cell* oly_args_, oly_cell* oly_ret_)          \
    {                                                                        \
        enum { oly_depth_ = (depth), oly_rh_ = (rh), oly_np_ = (nparams) };  \
        oly_cell* oly_fp_ = oly_frame_push((size), (map));                   \
        size_t oly_tmark_ = oly_tsp;                                         \
        oly_display[oly_depth_] = oly_fp_;                                   \
        if (oly_np_)                                                         \
            memcpy(oly_fp_, oly_args_, oly_np_ * sizeof(oly_cell));          \
        (void)oly_ret_;                                                      \
        {

#define FUNEND                                  \
        }                                       \
    oly_exit_: __attribute__((unused));         \
        oly_frame_pop(oly_fp_);                 \
        oly_tsp = oly_tmark_;                   \
        if (oly_rh_)                            \
            oly_troot(oly_ret_->h);             \
    }

#define MAIN(size, map)                                                      \
    void olympus_main(void)                                                  \
    {                                                                        \
        enum { oly_depth_ = 0 };                                             \
        oly_cell* oly_fp_ = oly_frame_push((size), (map));                   \
        const size_t oly_tmark_ = 0;                                         \
        oly_display[0] = oly_fp_;                                            \
        {

#define MAINEND                   \
        }                         \
        oly_frame_pop(oly_fp_);   \
        oly_tsp = oly_tmark_;     \
    }

/* ---- addressing ---- */

#define ADDRL(o) (&oly_fp_[o])
#define ADDRF(l, o) (&oly_display[oly_depth_ - (l)][o])
#define REF(a) ((oly_int)(intptr_t)(a))
#define ID(a) ((oly_int)(intptr_t)(a))

/* ---- constants ---- */

#define TRUE 1
#define FALSE 0
#define NONE 0

/* ---- declarations ---- */

#define DECLI(o) (oly_fp_[o].i = 0)
#define DECLB(o) (oly_fp_[o].i = 0)
#define DECLR(o) (oly_fp_[o].r = 0)
#define DECLS(o) (oly_fp_[o].h = 0)
#define DECLC(o) (oly_fp_[o].h = 0)
#define DECLV(o) (oly_fp_[o].h = 0)
#define DECLN(o) (oly_fp_[o].i = 0)
#define DECLL(o, f) (oly_fp_[o].h = (f))

/* ---- scalar slots ---- */

#define LDI(a) ((a)->i)
#define LDR(a) ((a)->r)
#define LDS(a) oly_troot((a)->h)
#define LDC(a) oly_troot((a)->h)
#define LDV(a) oly_troot((a)->h)
#define LDL(a) oly_troot((a)->h)
#define LDN(a) NONE
#define LDB(a) LDI(a)

#define STI(a, v) ((a)->i = (v))
#define STR(a, v) ((a)->r = (v))
#define STS(a, v) ((a)->h = (v))
#define STC(a, v) ((a)->h = (v))
#define STV(a, v) ((a)->h = (v))
#define STL(a, v) ((a)->h = (v))
#define STN(a, v) ((void)(v))
#define STB(a, v) STI(a, v)

/* ---- vector elements: value first, then index, then the vector ---- */

#define LDAI(a, i) oly_ldai((a)->h, (i))
#define LDAR(a, i) oly_ldar((a)->h, (i))
#define LDAS(a, i) oly_ldah((a)->h, (i))
#define LDAC(a, i) oly_ldah((a)->h, (i))
#define IDXI(h, i) oly_ldai((h), (i))
#define IDXR(h, i) oly_ldar((h), (i))
#define IDXS(h, i) oly_ldah((h), (i))
#define IDXC(h, i) oly_ldah((h), (i))
#define CHARAT(h, i) oly_charat((h), (i))
#define LDAB(a, i) LDAI(a, i)

#define STAI(a, i, v) do { oly_int oly_v_ = (v); oly_int oly_i_ = (i); oly_stai((a)->h, oly_i_, oly_v_); } while (0)
#define STAR(a, i, v) do { oly_real oly_v_ = (v); oly_int oly_i_ = (i); oly_star((a)->h, oly_i_, oly_v_); } while (0)
#define STAS(a, i, v) do { oly_handle oly_v_ = (v); oly_int oly_i_ = (i); oly_stah((a)->h, oly_i_, oly_v_); } while (0)
#define STAB(a, i, v) STAI(a, i, v)
#define STAC(a, i, v) do { oly_handle oly_v_ = (v); oly_int oly_i_ = (i); oly_stah((a)->h, oly_i_, oly_v_); } while (0)

#define VECI(n, ...) oly_vec(OLY_VEC_I, sizeof(oly_int), (n), (oly_int[]){__VA_ARGS__})
#define VECR(n, ...) oly_vec(OLY_VEC_R, sizeof(oly_real), (n), (oly_real[]){__VA_ARGS__})
#define VECH(n, ...) oly_vec(OLY_VEC_H, sizeof(oly_handle), (n), (oly_handle[]){__VA_ARGS__})
#define ADDVI(a, b) oly_vcat((a), (b), OLY_VEC_I, sizeof(oly_int))
#define ADDVR(a, b) oly_vcat((a), (b), OLY_VEC_R, sizeof(oly_real))
#define ADDVH(a, b) oly_vcat((a), (b), OLY_VEC_H, sizeof(oly_handle))
#define MULVI(a, n) oly_vrep((a), (n), OLY_VEC_I, sizeof(oly_int))
#define MULVR(a, n) oly_vrep((a), (n), OLY_VEC_R, sizeof(oly_real))
#define MULVH(a, n) oly_vrep((a), (n), OLY_VEC_H, sizeof(oly_handle))
#define LEN(h) oly_len(h)

/* ---- strings ---- */

#define LITS(s) oly_lits((s), sizeof(s) - 1)
#define ADDS(a, b) oly_adds((a), (b))
#define MULS(a, n) oly_muls((a), (n))
#define CMPS(a, b) oly_cmps((a), (b))

/* ---- complex ---- */

#define CPLX(re, im) oly_cplx((re), (im))
#define RTOC(x) oly_cplx((x), 0)
#define CADD(a, b) oly_cadd((a), (b))
#define CSUB(a, b) oly_csub((a), (b))
#define CMUL(a, b) oly_cmul((a), (b))
#define CDIV(a, b) oly_cdiv((a), (b))
#define CNEG(a) oly_cneg(a)
#define CPOS(a) oly_cpos(a)
#define CEQ(a, b) oly_ceq((a), (b))
#define LDCR(a) oly_cre((a)->h)
#define LDCI(a) oly_cim((a)->h)
#define CREAL(h) oly_cre(h)
#define CIMAG(h) oly_cim(h)
#define STCR(a, v) do { oly_real oly_v_ = (v); OLY_CX((a)->h)->re = oly_v_; } while (0)
#define STCI(a, v) do { oly_real oly_v_ = (v); OLY_CX((a)->h)->im = oly_v_; } while (0)

/* ---- arithmetic needing more than a C operator ---- */

#define MODI(a, b) oly_modi((a), (b))
#define POWI(a, b) oly_powi((a), (b))
#define DIVR(a, b) oly_divr((a), (b))
#define MODR(a, b) oly_modr((a), (b))
#define POWR(a, b) oly_powr((a), (b))
#define I2R(x) ((oly_real)(x))
#define R2I(x) oly_r2i(x)
#define S2I(h) oly_s2i(h)
#define S2R(h) oly_s2r(h)

/* ---- conversion to text ---- */

#define STR_I(x) oly_str_int((x), 0)
#define STR_B(x) oly_str_int((x), 1)
#define STR_R(x) oly_str_real(x)
#define STR_S(h) (h)
#define STR_C(h) oly_str_handle((h), OLY_T_C)
#define STR_N(x) ((void)(x), oly_lits("None", 4))
#define STR_VI(h) oly_str_handle((h), OLY_T_VI)
#define STR_VB(h) oly_str_handle((h), OLY_T_VB)
#define STR_VR(h) oly_str_handle((h), OLY_T_VR)
#define STR_VS(h) oly_str_handle((h), OLY_T_VS)
#define STR_VC(h) oly_str_handle((h), OLY_T_VC)

/* ---- output ---- */

#define PUT_I(x) oly_put_int((x), 0)
#define PUT_B(x) oly_put_int((x), 1)
#define PUT_R(x) oly_put_real(x)
#define PUT_S(h) oly_put_handle((h), OLY_T_S)
#define PUT_C(h) oly_put_handle((h), OLY_T_C)
#define PUT_N(x) ((void)(x), oly_put_handle(0, OLY_T_N))
#define PUT_VI(h) oly_put_handle((h), OLY_T_VI)
#define PUT_VB(h) oly_put_handle((h), OLY_T_VB)
#define PUT_VR(h) oly_put_handle((h), OLY_T_VR)
#define PUT_VS(h) oly_put_handle((h), OLY_T_VS)
#define PUT_VC(h) oly_put_handle((h), OLY_T_VC)
#define PUT_SP() oly_put_sp()
#define PRINT_NL() oly_put_nl()

#define PRINT_I(x) (PUT_I(x), oly_put_nl())
#define PRINT_B(x) (PUT_B(x), oly_put_nl())
#define PRINT_R(x) (PUT_R(x), oly_put_nl())
#define PRINT_S(h) (PUT_S(h), oly_put_nl())
#define PRINT_C(h) (PUT_C(h), oly_put_nl())
#define PRINT_N(x) (PUT_N(x), oly_put_nl())
#define PRINT_VI(h) (PUT_VI(h), oly_put_nl())
#define PRINT_VB(h) (PUT_VB(h), oly_put_nl())
#define PRINT_VR(h) (PUT_VR(h), oly_put_nl())
#define PRINT_VS(h) (PUT_VS(h), oly_put_nl())
#define PRINT_VC(h) (PUT_VC(h), oly_put_nl())

/* ---- control ---- */

#define IF(c) if (c) {
#define ELSE } else {
#define WHILE(c) while (c) {
#define FOR(v, s, e, st) for (oly_int v = (s); (st) > 0 ? v < (e) : v > (e); v += (st)) {
#define FORS(a, s, e, st)                                                                       \
    for (oly_int OLY_CAT(oly_k_, __LINE__) = (s);                                               \
         (st) > 0 ? OLY_CAT(oly_k_, __LINE__) < (e) : OLY_CAT(oly_k_, __LINE__) > (e);          \
         OLY_CAT(oly_k_, __LINE__) += (st)) {                                                   \
        (a)->i = OLY_CAT(oly_k_, __LINE__);
#define END }
#define EVAL(x) ((void)(x))
#define TRESET() (oly_tsp = oly_tmark_)

/* ---- functions ---- */

#define MKLAMBDA(f, depth) oly_mklambda((f), (depth))
#define ARGS(...) ((oly_cell[]){__VA_ARGS__})
#define NOARGS ((oly_cell*)0)
#define ARGI(x) {.i = (x)}
#define ARGR(x) {.r = (x)}
#define ARGH(x) {.h = (x)}
#define APPLY_I(f, n, a) (oly_apply((f), (n), a).i)
#define APPLY_R(f, n, a) (oly_apply((f), (n), a).r)
#define APPLY_H(f, n, a) (oly_apply((f), (n), a).h)
#define APPLY_N(f, n, a) ((void)oly_apply((f), (n), a), NONE)
#define RET_I(v) do { oly_ret_->i = (v); goto oly_exit_; } while (0)
#define RET_R(v) do { oly_ret_->r = (v); goto oly_exit_; } while (0)
#define RET_H(v) do { oly_ret_->h = (v); goto oly_exit_; } while (0)
#define RET_N(v) do { (void)(v); goto oly_exit_; } while (0)

#endif
