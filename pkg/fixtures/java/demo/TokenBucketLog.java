import java.util.ArrayList;
import java.util.List;

/** Fixed-capacity event journal with level filtering and compaction. */
public class TokenBucketLog {

    private final List<String> entries = new ArrayList<>();
    private final int capacity;
    private int dropped;

    public TokenBucketLog(int capacity) {
        this.capacity = capacity;
    }

    /**
     * Appends a formatted entry, compacting the journal when full: the
     * oldest half is folded into a single summary line.
     */
    public void append(int level, String event) {
        if (level < 0 || event == null) {
            dropped++;
            return;
        }
        if (entries.size() >= capacity) {
            int keep = capacity / 2;
            int folded = entries.size() - keep;
            List<String> tail = new ArrayList<>(entries.subList(folded, entries.size()));
            entries.clear();
            entries.add("[compacted " + folded + " entries]");
            entries.addAll(tail);
        }
        StringBuilder line = new StringBuilder();
        line.append('L').append(level).append(' ');
        line.append(event.trim());
        entries.add(line.toString());
    }

    List<String> snapshot() {
        return new ArrayList<>(entries);
    }

    int droppedCount() {
        return dropped;
    }
}
