package com.acme.util;

import java.util.Collections;
import java.util.List;
import java.util.*;

public class Helpers {
    private List<String> names;

    public int clamp(int v, int lo, int hi) {
        return Math.max(lo, Math.min(v, hi));
    }

    public void sortNames() {
        Collections.sort(names);
        names.size();
        helper.go();
        names.iterator().next();
    }

    static class Inner {
        private Map<String, Integer> counts;

        void bump(String k) {
            counts.put(k, counts.get(k) + 1);
        }
    }
}
