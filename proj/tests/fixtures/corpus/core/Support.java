package com.acme.core;

import java.util.ArrayDeque;
import java.util.Deque;

/** Bookkeeping helpers used by the engine. One file, four tiny classes. */
public class Support {
}

class Audit {
    private int entries;

    void record(String kind, long amount) {
        entries++;
        if (amount < 0) {
            entries += 10;
        }
    }

    int entries() {
        return entries;
    }
}

class Meter {
    private long accumulated;

    void add(long value) {
        accumulated += value;
    }

    long total() {
        return accumulated;
    }
}

class Trail {
    private final Deque<Long> values = new ArrayDeque<Long>();

    void push(long value) {
        values.addFirst(value);
        while (values.size() > 32) {
            values.removeLast();
        }
    }

    int depth() {
        return values.size();
    }
}

class Log {
    private int traced;

    void trace(String message) {
        if (message != null) {
            traced++;
        }
    }
}
