#ifndef OLYMPUS_HEAP_BYTES
#define OLYMPUS_HEAP_BYTES 8388608
#endif
#include "olympus.h"

HEAP(OLYMPUS_HEAP_BYTES);

FUNDECL(F1_outer);
FUNDECL(F2_inner);

FUNC(F1_outer,1,4,0,"iicl",0)
    DECLI(0);
    STI(ADDRL(0),1);
    DECLI(1);
    STI(ADDRL(1),2);
    DECLC(2);
    STC(ADDRL(2),CADD(RTOC(1.0),CPLX(0.0,2.0)));
    TRESET();
    DECLL(3,MKLAMBDA(F2_inner,2));
    TRESET();
    EVAL(APPLY_N(LDL(ADDRL(3)),0,NOARGS));
    TRESET();
    PUT_I(LDI(ADDRL(0)));PUT_SP();PUT_I(LDI(ADDRL(1)));PUT_SP();PUT_C(LDC(ADDRL(2)));PRINT_NL();
    TRESET();
FUNEND

FUNC(F2_inner,2,0,0,"",0)
    STCR(ADDRF(1,2),4.3);
FUNEND

MAIN(1,"l")
    DECLL(0,MKLAMBDA(F1_outer,1));
    TRESET();
    EVAL(APPLY_N(LDL(ADDRL(0)),0,NOARGS));
    TRESET();
MAINEND
