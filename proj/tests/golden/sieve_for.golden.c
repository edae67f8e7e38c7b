#ifndef OLYMPUS_HEAP_BYTES
#define OLYMPUS_HEAP_BYTES 8388608
#endif
#include "olympus.h"

HEAP(OLYMPUS_HEAP_BYTES);

MAIN(6,"iiiivi")
    DECLI(0);
    STI(ADDRL(0),10);
    DECLI(1);
    STI(ADDRL(1),8190);
    DECLI(2);
    STI(ADDRL(2),LDI(ADDRL(1)));
    DECLI(3);
    STI(ADDRL(3),0);
    DECLV(4);
    STV(ADDRL(4),MULVI(VECI(1,FALSE),(LDI(ADDRL(2))+1)));
    TRESET();
    FOR($iter_it$,0,LDI(ADDRL(0)),1)
        STI(ADDRL(3),0);
        FOR($iter_i$,0,LDI(ADDRL(2)),1)
            STAI(ADDRL(4),$iter_i$,TRUE);
        END
        FOR($iter_i$,0,LDI(ADDRL(2)),1)
            IF(LDAI(ADDRL(4),$iter_i$))
                DECLI(5);
                STI(ADDRL(5),(($iter_i$+$iter_i$)+3));
                FOR($iter_k$,($iter_i$+LDI(ADDRL(5))),(LDI(ADDRL(2))+1),LDI(ADDRL(5)))
                    STAI(ADDRL(4),$iter_k$,FALSE);
                END
                STI(ADDRL(3),(LDI(ADDRL(3))+1));
            END
        END
    END
    PRINT_I(LDI(ADDRL(3)));
MAINEND
