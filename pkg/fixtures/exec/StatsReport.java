import java.util.Locale;

/** Prints summary statistics for a fixed sample; used to check behavior preservation. */
public class StatsReport {

    public static void main(String[] args) {
        int[] sample = {14, 3, 27, 9, 3, 41, 18, 5, 33, 12};
        System.out.println(describe(sample));
    }

    static String describe(int[] values) {
        int count = values.length;
        int min = values[0];
        int max = values[0];
        long total = 0;
        for (int v : values) {
            if (v < min) {
                min = v;
            }
            if (v > max) {
                max = v;
            }
            total += v;
        }
        double mean = (double) total / count;
        return String.format(Locale.ROOT, "n=%d min=%d max=%d mean=%.2f", count, min, max, mean);
    }
}
