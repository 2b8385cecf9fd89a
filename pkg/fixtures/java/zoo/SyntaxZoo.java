import java.util.ArrayList;
import java.util.Comparator;
import java.util.HashMap;
import java.util.List;
import java.util.Map;
import java.util.function.Function;

/**
 * Lexical and declaration corner cases: generics, lambdas, anonymous and
 * local classes, var, varargs, text blocks, multi-declarator lines, arrays.
 */
public class SyntaxZoo {

    static final Map<String, Integer> WEIGHTS = new HashMap<>();

    private int hits, misses;

    public SyntaxZoo(int hits, int misses) {
        this.hits = hits;
        this.misses = misses;
    }

    Map<String, List<Integer>> bucketByPrefix(List<String> keys) {
        Map<String, List<Integer>> buckets = new HashMap<>();
        for (String key : keys) {
            String prefix = key.length() > 2 ? key.substring(0, 2) : key;
            buckets.computeIfAbsent(prefix, k -> new ArrayList<>()).add(key.length());
        }
        return buckets;
    }

    Function<Integer, Integer> makeScaler(int factor) {
        int offset = factor / 2;
        return value -> {
            int scaled = value * factor;
            return scaled + offset;
        };
    }

    Comparator<String> lengthThenAlpha() {
        return new Comparator<String>() {
            @Override
            public int compare(String left, String right) {
                int byLength = Integer.compare(left.length(), right.length());
                return byLength != 0 ? byLength : left.compareTo(right);
            }
        };
    }

    int localClassCounter(int seed) {
        class Stepper {
            int state = seed;

            int step() {
                state = state * 2 + 1;
                return state;
            }
        }
        Stepper stepper = new Stepper();
        stepper.step();
        return stepper.step();
    }

    @SafeVarargs
    static <T extends Comparable<T>> T maxOf(T first, T... rest) {
        T best = first;
        for (T candidate : rest) {
            if (candidate.compareTo(best) > 0) {
                best = candidate;
            }
        }
        return best;
    }

    String describeTable() {
        String header = """
                name | weight
                -----+-------
                """;
        StringBuilder table = new StringBuilder(header);
        for (Map.Entry<String, Integer> entry : WEIGHTS.entrySet()) {
            table.append(entry.getKey()).append(" | ").append(entry.getValue()).append('\n');
        }
        return table.toString();
    }

    int multiDeclarators(int n) {
        int lo = 0, hi = n, mid = (lo + hi) / 2;
        int[] scratch = new int[] {lo, mid, hi}, copy = scratch.clone();
        lo = copy[0] + scratch[2];
        return lo + mid;
    }

    double inferredLocals(String raw) {
        var trimmed = raw.trim();
        var parts = trimmed.split(",");
        var sum = 0.0;
        for (var part : parts) {
            sum += Double.parseDouble(part);
        }
        return sum / parts.length;
    }

    int oneLiner(int x) { return x * x + 1; }

    int packed(int a, int b) {
        int lowBits = a & 0xffff; int highBits = b << 16;
        return highBits | lowBits;
    }

    synchronized void recordHit(boolean hit) {
        if (hit) {
            hits++;
        } else {
            misses++;
        }
    }

    int casts(Object value, int fallback) {
        if (value instanceof Integer) {
            return (int) (Integer) value;
        }
        if (value instanceof String) {
            return ((String) value).length();
        }
        return fallback;
    }

    int ternaryChains(int score) {
        int grade = score > 89 ? 4 : score > 79 ? 3 : score > 69 ? 2 : 0;
        String label = grade >= 3 ? "high" : "low";
        return grade + label.length();
    }

    static int sumAll(int... values) {
        int total = 0;
        for (int v : values) {
            total += v;
        }
        return total;
    }

    char escapes(String raw) {
        char tab = '\t';
        char quote = '\'';
        String tricky = "a\"b\\c{d}e//f/*g*/";
        if (raw.indexOf(tricky) >= 0) {
            return quote;
        }
        return raw.isEmpty() ? tab : raw.charAt(0);
    }

    static int clamp(int value) {
        int floor = Math.max(0, value);
        int bounded = Math.min(100, floor);
        return bounded;
    }

    static int clamp(int value, int lo, int hi) {
        int floor = Math.max(lo, value);
        int bounded = Math.min(hi, floor);
        return bounded;
    }
}
