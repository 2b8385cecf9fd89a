import java.util.ArrayList;
import java.util.HashMap;
import java.util.List;
import java.util.Map;

/** Tracks stock deltas and reconciles them against a physical count. */
public class InventoryLedger {

    private final Map<String, Integer> booked = new HashMap<>();

    public void record(String sku, int delta) {
        booked.merge(sku, delta, Integer::sum);
    }

    /**
     * Compares booked quantities with counted ones and returns adjustment
     * entries for every discrepancy, counted-only SKUs included.
     */
    public List<String> reconcile(Map<String, Integer> counted) {
        List<String> adjustments = new ArrayList<>();
        for (Map.Entry<String, Integer> entry : booked.entrySet()) {
            String sku = entry.getKey();
            int expected = entry.getValue();
            int actual = counted.getOrDefault(sku, 0);
            if (actual != expected) {
                adjustments.add(sku + ":" + (actual - expected));
            }
        }
        for (Map.Entry<String, Integer> entry : counted.entrySet()) {
            String sku = entry.getKey();
            if (!booked.containsKey(sku) && entry.getValue() != 0) {
                adjustments.add(sku + ":" + entry.getValue());
            }
        }
        adjustments.sort(String::compareTo);
        return adjustments;
    }

    int totalBooked() {
        int total = 0;
        for (int quantity : booked.values()) {
            total += quantity;
        }
        return total;
    }
}
